#pragma once

#include <iosfwd>
#include <optional>

#include <json.hpp>

#include "disc/baselines.hpp"
#include "disc/mtree.hpp"
#include "disc/solvers.hpp"
#include "disc/zoom.hpp"

namespace disc {

/// Shortest decimal text that reads back to the same double; "inf" for
/// infinity.
std::string format_number(double v);

nlohmann::json to_json(const DiverseSubset& s, bool with_wall_time = true);
DiverseSubset subset_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ZoomDiff& d);
nlohmann::json to_json(const TreeStats& s);
nlohmann::json to_json(const QualityReport& q);
nlohmann::json to_json(const Verification& v);

/// One row per selected object: rank,id,<coordinates or labels>.
void write_solution_csv(std::ostream& out, const Dataset& data, const DiverseSubset& s);

}  // namespace disc
