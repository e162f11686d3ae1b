#include "disc/metrics.hpp"

#include <numbers>
#include <stdexcept>

namespace disc {

Point Point::numeric(ObjectId id, std::vector<double> coords) {
  Point p;
  p.id = id;
  p.kind = PointKind::numeric;
  p.coords = std::move(coords);
  return p;
}

Point Point::categorical(ObjectId id, std::vector<std::string> labels) {
  Point p;
  p.id = id;
  p.kind = PointKind::categorical;
  p.labels = std::move(labels);
  return p;
}

Dataset::Dataset(std::vector<Point> points, std::vector<std::string> column_names)
    : points_(std::move(points)), columns_(std::move(column_names)) {
  if (points_.empty()) return;
  kind_ = points_.front().kind;
  dim_ = points_.front().dim();
  if (dim_ == 0) throw std::invalid_argument("points must have at least one dimension");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (p.id != i) throw std::invalid_argument("point ids must be 0..n-1 in order");
    if (p.kind != kind_) throw std::invalid_argument("mixed point kinds in dataset");
    if (p.dim() != dim_) throw std::invalid_argument("mixed dimensionality in dataset");
  }
  if (!columns_.empty() && columns_.size() != dim_)
    throw std::invalid_argument("column name count does not match dimensionality");
}

const Point& Dataset::at(ObjectId id) const {
  if (id >= points_.size()) throw std::out_of_range("unknown object id " + std::to_string(id));
  return points_[id];
}

Dataset Dataset::subset(std::span<const ObjectId> ids) const {
  std::vector<Point> out;
  out.reserve(ids.size());
  for (ObjectId id : ids) {
    Point p = at(id);
    p.id = static_cast<ObjectId>(out.size());
    out.push_back(std::move(p));
  }
  return Dataset(std::move(out), columns_);
}

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::euclidean: return "euclidean";
    case Metric::manhattan: return "manhattan";
    case Metric::hamming: return "hamming";
  }
  return "?";
}

std::string_view to_string(PointKind k) {
  return k == PointKind::numeric ? "numeric" : "categorical";
}

Metric parse_metric(std::string_view name) {
  if (name == "euclidean") return Metric::euclidean;
  if (name == "manhattan") return Metric::manhattan;
  if (name == "hamming") return Metric::hamming;
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

PointKind parse_kind(std::string_view name) {
  if (name == "numeric") return PointKind::numeric;
  if (name == "categorical") return PointKind::categorical;
  throw std::invalid_argument("unknown point kind '" + std::string(name) + "'");
}

bool metric_supports(Metric m, PointKind k) {
  return (m == Metric::hamming) == (k == PointKind::categorical);
}

double distance(Metric m, const Point& a, const Point& b) {
  if (a.kind != b.kind) throw std::invalid_argument("distance between points of different kinds");
  if (!metric_supports(m, a.kind))
    throw std::invalid_argument(std::string(to_string(m)) + " does not apply to " +
                                std::string(to_string(a.kind)) + " points");
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  return distance_unchecked(m, a, b);
}

std::optional<int> independence_bound(Metric m, std::size_t d) {
  if (m == Metric::euclidean && d == 2) return 5;
  if (m == Metric::manhattan && d == 2) return 7;
  if (m == Metric::euclidean && d == 3) return 24;
  return std::nullopt;
}

namespace {
// Ceiling that absorbs floating-point noise so that exact ratios such as
// r2/r1 == golden ratio land on the integer they denote.
long long tolerant_ceil(double x) {
  return static_cast<long long>(std::ceil(x - 1e-9));
}
}  // namespace

long long annulus_independence_bound(Metric m, double r1, double r2) {
  if (!(r1 > 0.0)) throw std::invalid_argument("r1 must be positive");
  if (r2 < r1) throw std::invalid_argument("r2 must be at least r1");
  switch (m) {
    case Metric::euclidean: {
      const double beta = std::numbers::phi;
      const long long rings = tolerant_ceil(std::log(r2 / r1) / std::log(beta));
      return 9 * std::max(0LL, rings);
    }
    case Metric::manhattan: {
      const long long gamma = std::max(0LL, tolerant_ceil((r2 - r1) / r1));
      // sum_{i=1}^{gamma} (2i + 1) = gamma^2 + 2 gamma
      return 4 * (gamma * gamma + 2 * gamma);
    }
    case Metric::hamming:
      break;
  }
  throw std::invalid_argument("no annulus bound for metric " + std::string(to_string(m)));
}

}  // namespace disc
