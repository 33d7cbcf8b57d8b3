#include "depjump/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "depjump/error.hpp"

namespace depjump {

namespace {

std::size_t read_count(std::istream& in, const char* what) {
  long long v = -1;
  require(static_cast<bool>(in >> v) && v >= 0, ErrorKind::kParse,
          std::string("expected a non-negative integer for ") + what);
  return static_cast<std::size_t>(v);
}

std::vector<Vertex> read_vertex_array(const Json& j, const char* key, std::size_t n) {
  require(j.contains(key) && j.at(key).is_array(), ErrorKind::kParse,
          std::string("missing array field '") + key + "'");
  std::vector<Vertex> out;
  out.reserve(j.at(key).size());
  for (const auto& v : j.at(key)) {
    require(v.is_number_integer() && v.get<long long>() >= 0 &&
                static_cast<std::size_t>(v.get<long long>()) < n,
            ErrorKind::kParse, std::string("field '") + key + "' holds a value outside [0, n)");
    out.push_back(v.get<Vertex>());
  }
  return out;
}

template <typename T>
T field(const Json& j, const char* key) {
  require(j.contains(key), ErrorKind::kParse, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::kParse, std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

void write_graph(std::ostream& out, const Graph& g) {
  const auto edges = g.edges();
  out << g.order() << ' ' << edges.size() << '\n';
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

Graph read_graph(std::istream& in) {
  const auto n = read_count(in, "n");
  const auto m = read_count(in, "m");
  Graph g(n);
  for (std::size_t e = 0; e < m; ++e) {
    const auto u = read_count(in, "u");
    const auto v = read_count(in, "v");
    require(u < n && v < n && u != v, ErrorKind::kParse,
            "edge " + std::to_string(u) + " " + std::to_string(v) + " is invalid");
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return g;
}

std::string graph_text(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

void write_bipartite(std::ostream& out, const BipartiteH& h) {
  out << "AB\n" << h.n() << ' ' << h.edge_count() << '\n';
  for (Vertex a = 0; a < h.n(); ++a) {
    for (const Vertex b : h.neighbors(a)) out << a << ' ' << b << '\n';
  }
}

BipartiteH read_bipartite(std::istream& in) {
  std::string marker;
  require(static_cast<bool>(in >> marker) && marker == "AB", ErrorKind::kParse,
          "bipartite graph text must start with an AB line");
  const auto n = read_count(in, "n");
  const auto m = read_count(in, "m");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(m);
  for (std::size_t e = 0; e < m; ++e) {
    const auto a = read_count(in, "a");
    const auto b = read_count(in, "b");
    require(a < n && b < n, ErrorKind::kParse, "bipartite pair out of range");
    pairs.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  const double density = n == 0 ? 0.0 : static_cast<double>(m) / static_cast<double>(n * n);
  BipartiteH h(n, density);
  for (const auto& [a, b] : pairs) h.add_edge(a, b);
  return h;
}

std::string bipartite_text(const BipartiteH& h) {
  std::ostringstream out;
  write_bipartite(out, h);
  return out.str();
}

Json model_to_json(const DependentModel& model, std::optional<std::uint64_t> seed) {
  Json j;
  j["variant"] = std::string(to_string(model.variant()));
  j["n"] = model.n();
  j["p"] = model.p();
  switch (model.variant()) {
    case Variant::kVertexColorAnd:
    case Variant::kBlockLift:
      j["d"] = model.d();
      break;
    case Variant::kProtocolInduced:
      j["H"] = bipartite_text(model.h());
      j["f"] = model.f();
      break;
    default:
      break;
  }
  if (seed) j["seed"] = *seed;
  return j;
}

DependentModel model_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::kParse, "model descriptor must be a JSON object");
  const auto variant = variant_from_string(field<std::string>(j, "variant"));
  const auto n = field<std::size_t>(j, "n");
  switch (variant) {
    case Variant::kErdosRenyi: return DependentModel::erdos_renyi(n, field<double>(j, "p"));
    case Variant::kVertexColorAnd:
      return DependentModel::vertex_color_and(n, field<double>(j, "p"), field<std::size_t>(j, "d"));
    case Variant::kBlockLift:
      return DependentModel::block_lift(n, field<double>(j, "p"), field<std::size_t>(j, "d"));
    case Variant::kXorBipartite: return DependentModel::xor_bipartite(n, field<double>(j, "p"));
    case Variant::kEqualityClique: return DependentModel::equality_clique(n, field<double>(j, "p"));
    case Variant::kProtocolInduced: {
      BipartiteH h;
      if (j.contains("H")) {
        std::istringstream in(field<std::string>(j, "H"));
        h = read_bipartite(in);
      } else {
        h = sample_h(n, field<double>(j, "p_H"), field<std::uint64_t>(j, "h_seed"));
      }
      require(h.n() == n, ErrorKind::kParse, "H size disagrees with n");
      std::vector<Vertex> f = j.contains("f") ? read_vertex_array(j, "f", n)
                                              : random_function(n, field<std::uint64_t>(j, "f_seed"));
      if (j.contains("d")) f = lex_least_dlimited(f, field<std::size_t>(j, "d")).g;
      return DependentModel::protocol_induced(std::move(h), std::move(f));
    }
  }
  throw Error(ErrorKind::kParse, "unknown variant");
}

std::string describe(const DependentModel& model) { return model_to_json(model).dump(); }

Json instance_to_json(const Mpj3Instance& inst) {
  return Json{{"n", inst.n}, {"i", inst.i}, {"f2", inst.f2}, {"x", to_bit_text(inst.x)}};
}

Json instance_to_json(const MpjHatInstance& inst) {
  Json j{{"n", inst.n}, {"k", inst.players()}, {"i", inst.i}};
  for (std::size_t l = 0; l < inst.layers.size(); ++l) {
    j["f" + std::to_string(l + 2)] = inst.layers[l];
  }
  return j;
}

Mpj3Instance mpj3_from_json(const Json& j) {
  Mpj3Instance inst;
  inst.n = field<std::size_t>(j, "n");
  inst.i = field<Vertex>(j, "i");
  inst.f2 = read_vertex_array(j, "f2", inst.n);
  inst.x = from_bit_text(field<std::string>(j, "x"));
  validate(inst);
  return inst;
}

MpjHatInstance mpjhat_from_json(const Json& j) {
  MpjHatInstance inst;
  inst.n = field<std::size_t>(j, "n");
  inst.i = field<Vertex>(j, "i");
  const auto k = field<std::size_t>(j, "k");
  require(k >= 2, ErrorKind::kParse, "k must be at least 2");
  for (std::size_t l = 2; l <= k; ++l) {
    const auto key = "f" + std::to_string(l);
    inst.layers.push_back(read_vertex_array(j, key.c_str(), inst.n));
  }
  validate(inst);
  return inst;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_trial_csv(std::ostream& out, const TrialReport& report) {
  out << kCsvHeader << '\n' << "seed_index,statistic,value\n";
  for (std::size_t t = 0; t < report.values.size(); ++t) {
    out << t << ',' << report.statistic << ',' << format_number(report.values[t]) << '\n';
  }
}

void write_checks_csv(std::ostream& out, const std::vector<BoundCheck>& checks) {
  out << kCsvHeader << '\n' << "name,analytic,empirical,pass,slack,note\n";
  for (const auto& c : checks) {
    const char* verdict = c.skipped ? "skipped" : c.informational ? "info" : c.pass ? "pass" : "fail";
    std::string note = c.note;
    for (char& ch : note) {
      if (ch == ',') ch = ';';
    }
    out << c.name << ',' << format_number(c.analytic) << ',' << format_number(c.empirical) << ','
        << verdict << ',' << format_number(c.slack) << ',' << note << '\n';
  }
}

Json summary_json(const TrialReport& report, const BoundCheck& check) {
  Json j;
  j["descriptor"] = Json::parse(report.descriptor);
  j["seed"] = report.seed;
  j["trials"] = report.trials;
  j["statistic"] = report.statistic;
  j["mean"] = report.mean;
  j["min"] = report.min;
  j["max"] = report.max;
  j["bound"] = check.analytic;
  j["empirical"] = check.empirical;
  j["pass"] = check.pass;
  return j;
}

}  // namespace depjump
