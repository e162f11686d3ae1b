#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace disc {

using ObjectId = std::uint32_t;

enum class PointKind { numeric, categorical };

enum class Metric { euclidean, manhattan, hamming };

/// One result object. Numeric points carry `coords`, categorical points carry
/// `labels`; the other vector stays empty.
struct Point {
  ObjectId id = 0;
  PointKind kind = PointKind::numeric;
  std::vector<double> coords;
  std::vector<std::string> labels;

  std::size_t dim() const {
    return kind == PointKind::numeric ? coords.size() : labels.size();
  }

  static Point numeric(ObjectId id, std::vector<double> coords);
  static Point categorical(ObjectId id, std::vector<std::string> labels);
};

/// An immutable collection of points sharing kind and dimensionality, with
/// ids equal to their positions.
class Dataset {
 public:
  Dataset() = default;
  /// Throws std::invalid_argument on mixed kinds/dimensions or when ids are
  /// not exactly 0..n-1 in order.
  explicit Dataset(std::vector<Point> points,
                   std::vector<std::string> column_names = {});

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::size_t dim() const { return dim_; }
  PointKind kind() const { return kind_; }
  const Point& operator[](ObjectId id) const { return points_[id]; }
  const Point& at(ObjectId id) const;
  const std::vector<Point>& points() const { return points_; }
  const std::vector<std::string>& column_names() const { return columns_; }

  /// Copies the listed points into a new dataset with ids 0..k-1, in order.
  Dataset subset(std::span<const ObjectId> ids) const;

 private:
  std::vector<Point> points_;
  std::vector<std::string> columns_;
  std::size_t dim_ = 0;
  PointKind kind_ = PointKind::numeric;
};

std::string_view to_string(Metric m);
std::string_view to_string(PointKind k);
/// Throws std::invalid_argument on an unknown name.
Metric parse_metric(std::string_view name);
PointKind parse_kind(std::string_view name);

bool metric_supports(Metric m, PointKind k);

/// Checked distance. Throws std::invalid_argument on dimension mismatch,
/// kind mismatch, or a metric that does not apply to the points' kind.
double distance(Metric m, const Point& a, const Point& b);

/// Unchecked distance for hot loops; callers validate once up front.
inline double distance_unchecked(Metric m, const Point& a, const Point& b);

/// Maximum number of pairwise-independent neighbors any object can have, when
/// a closed-form value is known for the metric/dimension pair.
std::optional<int> independence_bound(Metric m, std::size_t d);

/// Upper bound on the number of objects within r2 of an object that are
/// pairwise at least r1 apart (2D only). Throws std::invalid_argument for
/// r1 <= 0, r2 < r1, or a metric without a known formula.
long long annulus_independence_bound(Metric m, double r1, double r2);

// ---------------------------------------------------------------------------

inline double distance_unchecked(Metric m, const Point& a, const Point& b) {
  switch (m) {
    case Metric::euclidean: {
      double s = 0.0;
      const std::size_t n = a.coords.size();
      for (std::size_t i = 0; i < n; ++i) {
        const double diff = a.coords[i] - b.coords[i];
        s += diff * diff;
      }
      return std::sqrt(s);
    }
    case Metric::manhattan: {
      double s = 0.0;
      const std::size_t n = a.coords.size();
      for (std::size_t i = 0; i < n; ++i) s += std::abs(a.coords[i] - b.coords[i]);
      return s;
    }
    case Metric::hamming: {
      int s = 0;
      const std::size_t n = a.labels.size();
      for (std::size_t i = 0; i < n; ++i) s += a.labels[i] != b.labels[i] ? 1 : 0;
      return static_cast<double>(s);
    }
  }
  return 0.0;
}

}  // namespace disc
