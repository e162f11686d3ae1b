#include "disc/export.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace disc {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

namespace {

// JSON has no infinity; unbounded values become null.
nlohmann::json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::json to_json(const DiverseSubset& s, bool with_wall_time) {
  nlohmann::json j{{"radius", s.radius},
                   {"algorithm", s.algorithm},
                   {"size", s.size()},
                   {"ids", s.ids},
                   {"access_cost", s.access_cost}};
  if (with_wall_time) j["wall_ms"] = s.wall_ms;
  return j;
}

DiverseSubset subset_from_json(const nlohmann::json& j) {
  DiverseSubset s;
  s.radius = j.at("radius").get<double>();
  s.ids = j.at("ids").get<std::vector<ObjectId>>();
  s.algorithm = j.value("algorithm", std::string());
  s.access_cost = j.value("access_cost", std::uint64_t{0});
  s.wall_ms = j.value("wall_ms", 0.0);
  return s;
}

nlohmann::json to_json(const ZoomDiff& d) {
  return {{"kept", d.kept}, {"added", d.added}, {"removed", d.removed}};
}

nlohmann::json to_json(const TreeStats& s) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : s.levels)
    levels.push_back(
        {{"level", l.level}, {"nodes", l.nodes}, {"entries", l.entries}, {"mean_fill", l.mean_fill}});
  return {{"objects", s.objects},         {"height", s.height},
          {"node_count", s.node_count},   {"leaf_count", s.leaf_count},
          {"capacity", s.capacity},       {"split_policy", s.policy},
          {"fat_factor", s.fat_factor},   {"build_accesses", s.build_accesses},
          {"levels", levels}};
}

nlohmann::json to_json(const QualityReport& q) {
  nlohmann::json j{{"f_min", number_or_null(q.f_min)},
                   {"f_sum", q.f_sum},
                   {"medoid_cost", number_or_null(q.medoid_cost)},
                   {"coverage_fraction", q.coverage_fraction},
                   {"degenerate", q.degenerate}};
  if (q.jaccard_to) j["jaccard_to"] = *q.jaccard_to;
  return j;
}

nlohmann::json to_json(const Verification& v) {
  return {{"coverage", v.coverage}, {"independence", v.independence}};
}

void write_solution_csv(std::ostream& out, const Dataset& data, const DiverseSubset& s) {
  out << "rank,id";
  for (std::size_t j = 0; j < data.dim(); ++j)
    out << ',' << (j < data.column_names().size() ? data.column_names()[j] : "x" + std::to_string(j));
  out << '\n';
  for (std::size_t rank = 0; rank < s.ids.size(); ++rank) {
    const Point& p = data.at(s.ids[rank]);
    out << rank << ',' << p.id;
    for (std::size_t j = 0; j < p.dim(); ++j)
      out << ',' << (p.kind == PointKind::numeric ? format_number(p.coords[j]) : p.labels[j]);
    out << '\n';
  }
}

}  // namespace disc
