#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "depjump/bipartite.hpp"
#include "depjump/estimators.hpp"
#include "depjump/graph.hpp"
#include "depjump/models.hpp"
#include "depjump/mpj.hpp"

namespace depjump {

using Json = nlohmann::json;

// Graph text format: "n m", then m lines "u v" with u < v in increasing
// order. Bipartite H adds a leading "AB" line; pairs are "a b".

void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);
std::string graph_text(const Graph& g);

void write_bipartite(std::ostream& out, const BipartiteH& h);
BipartiteH read_bipartite(std::istream& in);
std::string bipartite_text(const BipartiteH& h);

/// {variant, n, p, d?, seed?}; ProtocolInduced embeds "H" (text) and "f".
Json model_to_json(const DependentModel& model, std::optional<std::uint64_t> seed = {});
DependentModel model_from_json(const Json& j);
/// Compact canonical descriptor string.
std::string describe(const DependentModel& model);

Json instance_to_json(const Mpj3Instance& inst);
Json instance_to_json(const MpjHatInstance& inst);
Mpj3Instance mpj3_from_json(const Json& j);
MpjHatInstance mpjhat_from_json(const Json& j);

inline constexpr const char* kCsvHeader = "# depjump-csv v1";

/// One row per trial: seed_index,statistic,value.
void write_trial_csv(std::ostream& out, const TrialReport& report);
/// One row per check: name,analytic,empirical,pass,slack,note.
void write_checks_csv(std::ostream& out, const std::vector<BoundCheck>& checks);
/// Fixed-precision rendering used by every CSV writer.
std::string format_number(double v);

Json summary_json(const TrialReport& report, const BoundCheck& check);

}  // namespace depjump
