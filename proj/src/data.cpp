#include "disc/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace disc {

Dataset gen_uniform(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("n and d must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> c(d);
    for (auto& x : c) x = u(rng);
    pts.push_back(Point::numeric(static_cast<ObjectId>(i), std::move(c)));
  }
  return Dataset(std::move(pts));
}

Dataset gen_clustered(std::size_t n, std::size_t d, std::uint64_t seed, ClusterParams params) {
  if (n < 1 || d < 1) throw std::invalid_argument("n and d must be positive");
  if (params.clusters < 1 || params.clusters > n)
    throw std::invalid_argument("cluster count must be in [1, n]");
  if (!(params.sigma_min > 0.0) || params.sigma_max < params.sigma_min)
    throw std::invalid_argument("bad cluster spread range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> weight(1.0, 4.0);
  std::uniform_real_distribution<double> spread(params.sigma_min, params.sigma_max);

  const std::size_t k = params.clusters;
  std::vector<std::vector<double>> centers(k, std::vector<double>(d));
  std::vector<double> sigma(k), w(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (auto& x : centers[c]) x = u(rng);
    sigma[c] = spread(rng);
    w[c] = weight(rng);
  }
  // Sizes proportional to the weights, remainder to the heaviest clusters.
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<std::size_t> size(k);
  std::size_t used = 0;
  for (std::size_t c = 0; c < k; ++c) {
    size[c] = static_cast<std::size_t>(std::floor(w[c] / total * static_cast<double>(n)));
    used += size[c];
  }
  std::vector<std::size_t> by_weight(k);
  for (std::size_t c = 0; c < k; ++c) by_weight[c] = c;
  std::sort(by_weight.begin(), by_weight.end(),
            [&](std::size_t a, std::size_t b) { return w[a] > w[b] || (w[a] == w[b] && a < b); });
  for (std::size_t i = 0; used < n; ++i, ++used) ++size[by_weight[i % k]];

  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t c = 0; c < k; ++c) {
    std::normal_distribution<double> g(0.0, sigma[c]);
    for (std::size_t i = 0; i < size[c]; ++i) {
      std::vector<double> x(d);
      for (std::size_t j = 0; j < d; ++j) x[j] = std::clamp(centers[c][j] + g(rng), 0.0, 1.0);
      pts.push_back(Point::numeric(0, std::move(x)));
    }
  }
  // Interleave the clusters so ids (and insertion order) carry no grouping.
  std::shuffle(pts.begin(), pts.end(), rng);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i].id = static_cast<ObjectId>(i);
  return Dataset(std::move(pts));
}

Dataset gen_categorical(std::size_t n, std::size_t d, std::size_t arity, std::uint64_t seed) {
  if (n < 1 || d < 1 || arity < 1) throw std::invalid_argument("n, d and arity must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, arity - 1);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> labels(d);
    for (auto& l : labels) l = "a" + std::to_string(pick(rng));
    pts.push_back(Point::categorical(static_cast<ObjectId>(i), std::move(labels)));
  }
  return Dataset(std::move(pts));
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(trim(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  cells.push_back(trim(cell));
  return cells;
}

std::optional<double> parse_number(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

Dataset read_csv(std::istream& in, CsvOptions options) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line))
    if (!trim(line).empty()) {
      header = split_row(line);
      break;
    }
  if (header.empty()) throw std::runtime_error("empty CSV input");
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_row(line);
    if (cells.size() != header.size())
      throw std::runtime_error("ragged CSV row at line " + std::to_string(line_no));
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw std::runtime_error("CSV has a header but no rows");

  const std::size_t d = header.size();
  std::vector<bool> numeric_col(d, true);
  for (const auto& row : rows)
    for (std::size_t j = 0; j < d; ++j)
      if (numeric_col[j] && !parse_number(row[j])) numeric_col[j] = false;
  const auto numeric_cols = static_cast<std::size_t>(std::count(numeric_col.begin(), numeric_col.end(), true));

  PointKind kind;
  if (options.kind) {
    kind = *options.kind;
    if (kind == PointKind::numeric && numeric_cols != d)
      throw std::runtime_error("non-numeric cell in a numeric CSV");
  } else {
    if (numeric_cols != 0 && numeric_cols != d)
      throw std::runtime_error("CSV mixes numeric and categorical columns");
    kind = numeric_cols == d ? PointKind::numeric : PointKind::categorical;
  }

  std::vector<Point> pts;
  pts.reserve(rows.size());
  if (kind == PointKind::categorical) {
    for (auto& row : rows)
      pts.push_back(Point::categorical(static_cast<ObjectId>(pts.size()), std::move(row)));
    return Dataset(std::move(pts), header);
  }
  std::vector<std::vector<double>> values(rows.size(), std::vector<double>(d));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) values[i][j] = *parse_number(rows[i][j]);
  if (options.normalize) {
    for (std::size_t j = 0; j < d; ++j) {
      double lo = values[0][j], hi = values[0][j];
      for (const auto& v : values) {
        lo = std::min(lo, v[j]);
        hi = std::max(hi, v[j]);
      }
      for (auto& v : values) v[j] = hi > lo ? (v[j] - lo) / (hi - lo) : 0.0;
    }
  }
  for (auto& v : values) pts.push_back(Point::numeric(static_cast<ObjectId>(pts.size()), std::move(v)));
  return Dataset(std::move(pts), header);
}

Dataset load_csv(const std::string& path, CsvOptions options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_csv(in, options);
}

void write_csv(std::ostream& out, const Dataset& data) {
  const std::size_t d = data.dim();
  for (std::size_t j = 0; j < d; ++j) {
    if (j) out << ',';
    out << quote(j < data.column_names().size() ? data.column_names()[j] : "x" + std::to_string(j));
  }
  out << '\n';
  char buf[32];
  for (const Point& p : data.points()) {
    for (std::size_t j = 0; j < d; ++j) {
      if (j) out << ',';
      if (p.kind == PointKind::numeric) {
        // Shortest representation that round-trips exactly.
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p.coords[j]);
        out.write(buf, end - buf);
      } else {
        out << quote(p.labels[j]);
      }
    }
    out << '\n';
  }
}

void save_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_csv(out, data);
}

GeneratorSpec GeneratorSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("generator spec must be a JSON object");
  GeneratorSpec s;
  for (const auto& [key, value] : j.items()) {
    if (key == "generator") s.generator = value.get<std::string>();
    else if (key == "n") s.n = value.get<std::size_t>();
    else if (key == "d") s.d = value.get<std::size_t>();
    else if (key == "seed") s.seed = value.get<std::uint64_t>();
    else if (key == "clusters") s.cluster.clusters = value.get<std::size_t>();
    else if (key == "sigma_min") s.cluster.sigma_min = value.get<double>();
    else if (key == "sigma_max") s.cluster.sigma_max = value.get<double>();
    else if (key == "arity") s.arity = value.get<std::size_t>();
    else throw std::invalid_argument("unknown generator key '" + key + "'");
  }
  if (s.generator != "uniform" && s.generator != "clustered" && s.generator != "categorical")
    throw std::invalid_argument("unknown generator '" + s.generator + "'");
  return s;
}

nlohmann::json GeneratorSpec::to_json() const {
  nlohmann::json j{{"generator", generator}, {"n", n}, {"d", d}, {"seed", seed}};
  if (generator == "clustered") {
    j["clusters"] = cluster.clusters;
    j["sigma_min"] = cluster.sigma_min;
    j["sigma_max"] = cluster.sigma_max;
  }
  if (generator == "categorical") j["arity"] = arity;
  return j;
}

Dataset GeneratorSpec::generate() const {
  if (generator == "uniform") return gen_uniform(n, d, seed);
  if (generator == "clustered") return gen_clustered(n, d, seed, cluster);
  if (generator == "categorical") return gen_categorical(n, d, arity, seed);
  throw std::invalid_argument("unknown generator '" + generator + "'");
}

}  // namespace disc
