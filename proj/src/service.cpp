#include "disc/service.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <httplib.h>

#include "disc/baselines.hpp"
#include "disc/data.hpp"
#include "disc/export.hpp"

namespace disc {

using nlohmann::json;

namespace {

Response error(int status, const std::string& message) { return {status, {{"error", message}}}; }

struct HttpError : std::runtime_error {
  int status;
  HttpError(int s, const std::string& m) : std::runtime_error(m), status(s) {}
};

json parse_body(std::string_view body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw HttpError(400, "body is not valid JSON");
  if (!j.is_object()) throw HttpError(400, "body must be a JSON object");
  return j;
}

void only_keys(const json& j, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw HttpError(400, "unknown field '" + key + "'");
}

double radius_field(const json& j, const char* key) {
  if (!j.contains(key)) throw HttpError(422, std::string("missing '") + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw HttpError(422, std::string("'") + key + "' must be a number");
  const double r = v.get<double>();
  if (!std::isfinite(r) || r <= 0.0) throw HttpError(422, std::string("'") + key + "' must be positive");
  return r;
}

std::size_t count_data_rows(std::string_view text) {
  std::size_t rows = 0;
  bool content = false;
  for (char c : text) {
    if (c == '\n') {
      rows += content;
      content = false;
    } else if (c != '\r' && c != ' ' && c != '\t') {
      content = true;
    }
  }
  rows += content;
  return rows > 0 ? rows - 1 : 0;
}

std::vector<ObjectId> sorted_ids(std::vector<ObjectId> ids) {
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::map<std::string, std::string> parse_query(std::string_view q) {
  std::map<std::string, std::string> out;
  while (!q.empty()) {
    const auto amp = q.find('&');
    const auto part = q.substr(0, amp);
    const auto eq = part.find('=');
    if (eq == std::string_view::npos)
      out[std::string(part)] = "";
    else
      out[std::string(part.substr(0, eq))] = std::string(part.substr(eq + 1));
    if (amp == std::string_view::npos) break;
    q.remove_prefix(amp + 1);
  }
  return out;
}

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  while (!path.empty()) {
    if (path.front() == '/') {
      path.remove_prefix(1);
      continue;
    }
    const auto slash = path.find('/');
    parts.emplace_back(path.substr(0, slash));
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash);
  }
  return parts;
}

json points_json(const Dataset& d) {
  json pts = json::array();
  for (const auto& p : d.points()) {
    if (p.kind == PointKind::numeric)
      pts.push_back(p.coords);
    else
      pts.push_back(p.labels);
  }
  return pts;
}

std::shared_ptr<const Dataset> dataset_from_json(const json& j) {
  const auto kind = parse_kind(j.at("kind").get<std::string>());
  std::vector<Point> pts;
  ObjectId id = 0;
  for (const auto& p : j.at("points")) {
    if (kind == PointKind::numeric)
      pts.push_back(Point::numeric(id++, p.get<std::vector<double>>()));
    else
      pts.push_back(Point::categorical(id++, p.get<std::vector<std::string>>()));
  }
  return std::make_shared<const Dataset>(std::move(pts),
                                         j.value("columns", std::vector<std::string>{}));
}

}  // namespace

ServiceConfig ServiceConfig::from_env() {
  ServiceConfig c;
  if (const char* bind = std::getenv("DISC_BIND")) {
    const std::string b = bind;
    const auto colon = b.rfind(':');
    if (colon == std::string::npos) {
      c.host = b;
    } else {
      c.host = b.substr(0, colon);
      c.port = std::stoi(b.substr(colon + 1));
    }
  }
  if (const char* limit = std::getenv("DISC_MAX_POINTS")) c.max_points = std::stoull(limit);
  if (const char* path = std::getenv("DISC_PERSIST_PATH")) c.persist_path = path;
  return c;
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  if (!config_.persist_path.empty() && std::filesystem::exists(config_.persist_path)) {
    std::ifstream in(config_.persist_path);
    restore(json::parse(in));
  }
}

Service::~Service() = default;

Response Service::handle(std::string_view method, std::string_view target, std::string_view body,
                         std::string_view content_type) {
  try {
    const auto qpos = target.find('?');
    const auto parts = split_path(target.substr(0, qpos));
    const auto query =
        qpos == std::string_view::npos ? std::map<std::string, std::string>{} : parse_query(target.substr(qpos + 1));
    const bool get = method == "GET", post = method == "POST";
    auto wrong_method = [] { return error(405, "method not allowed"); };

    if (parts.size() == 1 && parts[0] == "health") {
      if (!get) return wrong_method();
      return {200, {{"status", "ok"}}};
    }
    if (!parts.empty() && parts[0] == "datasets") {
      if (parts.size() == 1) return post ? create_dataset(body, content_type) : wrong_method();
      if (parts.size() == 2) return get ? get_dataset(parts[1], false) : wrong_method();
      if (parts.size() == 3 && parts[2] == "points")
        return get ? get_dataset(parts[1], true) : wrong_method();
      if (parts.size() == 3 && parts[2] == "disc") return post ? solve(parts[1], body) : wrong_method();
    }
    if (!parts.empty() && parts[0] == "solutions") {
      if (parts.size() == 2) {
        if (!get) return wrong_method();
        std::optional<std::string> ref;
        if (auto it = query.find("reference"); it != query.end()) ref = it->second;
        return get_solution(parts[1], ref);
      }
      if (parts.size() == 3 && parts[2] == "zoom") return post ? zoom(parts[1], body) : wrong_method();
    }
    return error(404, "no such endpoint");
  } catch (const HttpError& e) {
    return error(e.status, e.what());
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

Response Service::create_dataset(std::string_view body, std::string_view content_type) {
  try {
    std::shared_ptr<const Dataset> data;
    std::optional<Metric> metric;
    std::size_t capacity = 50;

    if (content_type.rfind("text/csv", 0) == 0) {
      if (count_data_rows(body) > config_.max_points)
        return error(413, "dataset exceeds " + std::to_string(config_.max_points) + " points");
      std::istringstream in{std::string(body)};
      data = std::make_shared<const Dataset>(read_csv(in));
    } else {
      const json j = parse_body(body);
      only_keys(j, {"generator", "csv", "kind", "normalize", "metric", "capacity"});
      if (j.contains("generator") == j.contains("csv"))
        return error(400, "give exactly one of 'generator' and 'csv'");
      if (j.contains("metric")) metric = parse_metric(j.at("metric").get<std::string>());
      if (j.contains("capacity")) capacity = j.at("capacity").get<std::size_t>();
      if (j.contains("generator")) {
        if (j.contains("kind") || j.contains("normalize"))
          return error(400, "'kind' and 'normalize' apply to csv uploads only");
        const auto spec = GeneratorSpec::from_json(j.at("generator"));
        if (spec.n > config_.max_points)
          return error(413, "dataset exceeds " + std::to_string(config_.max_points) + " points");
        data = std::make_shared<const Dataset>(spec.generate());
      } else {
        const auto text = j.at("csv").get<std::string>();
        if (count_data_rows(text) > config_.max_points)
          return error(413, "dataset exceeds " + std::to_string(config_.max_points) + " points");
        CsvOptions opts;
        if (j.contains("kind")) opts.kind = parse_kind(j.at("kind").get<std::string>());
        opts.normalize = j.value("normalize", true);
        std::istringstream in(text);
        data = std::make_shared<const Dataset>(read_csv(in, opts));
      }
    }
    const Metric m =
        metric.value_or(data->kind() == PointKind::numeric ? Metric::euclidean : Metric::hamming);
    if (!metric_supports(m, data->kind()))
      return error(400, std::string("metric ") + std::string(to_string(m)) + " does not apply to " +
                            std::string(to_string(data->kind())) + " data");
    MTreeConfig probe;
    probe.node_capacity = capacity;
    probe.validate();
    const std::string id = add_dataset(std::move(data), m, capacity);
    return {201, summary(*find_dataset(id))};
  } catch (const HttpError& e) {
    return error(e.status, e.what());
  } catch (const json::exception& e) {
    return error(400, e.what());
  } catch (const std::invalid_argument& e) {
    return error(400, e.what());
  } catch (const std::runtime_error& e) {
    return error(400, e.what());
  }
}

Response Service::get_dataset(const std::string& id, bool with_points) const {
  const auto e = find_dataset(id);
  if (!e) return error(404, "unknown dataset '" + id + "'");
  json j = summary(*e);
  if (with_points) j["points"] = points_json(*e->data);
  return {200, j};
}

Response Service::solve(const std::string& dataset_id, std::string_view body) {
  const auto e = find_dataset(dataset_id);
  if (!e) return error(404, "unknown dataset '" + dataset_id + "'");
  try {
    const json j = parse_body(body);
    only_keys(j, {"r", "algorithm"});
    const double r = radius_field(j, "r");
    AlgorithmSpec spec;
    try {
      spec = AlgorithmSpec::parse(j.value("algorithm", std::string("grey")));
    } catch (const std::invalid_argument& ex) {
      return error(422, ex.what());
    } catch (const json::exception&) {
      return error(422, "'algorithm' must be a string");
    }

    std::unique_lock lock(e->mutation, std::try_to_lock);
    if (!lock.owns_lock()) return error(409, "dataset '" + dataset_id + "' is busy");
    auto entry = std::make_shared<SolutionEntry>();
    entry->dataset = dataset_id;
    entry->subset = disc::solve(*e->tree, r, spec);
    entry->independent = spec.independent();
    entry->verification = verify(*e->data, entry->subset, e->metric);
    const bool ok =
        entry->independent ? entry->verification.valid() : entry->verification.coverage;
    if (!ok) return error(500, "solver output failed verification");
    lock.unlock();

    add_solution(entry);
    json out = describe(*entry);
    out["coloring"] = {{"black", sorted_ids(entry->subset.ids)},
                       {"grey_count", e->data->size() - entry->subset.size()},
                       {"white_count", 0}};
    return {201, out};
  } catch (const HttpError& ex) {
    return error(ex.status, ex.what());
  }
}

Response Service::zoom(const std::string& solution_id, std::string_view body) {
  const auto base = find_solution(solution_id);
  if (!base) return error(404, "unknown solution '" + solution_id + "'");
  const auto e = find_dataset(base->dataset);
  if (!e) return error(404, "dataset of solution '" + solution_id + "' is gone");
  try {
    const json j = parse_body(body);
    only_keys(j, {"r_prime", "variant", "focus"});
    const double r_new = radius_field(j, "r_prime");
    if (r_new == base->subset.radius) return error(422, "r_prime equals the solution radius");
    if (!base->independent || !base->global)
      return error(422, "only globally valid independent solutions can be zoomed");
    ZoomVariant variant = ZoomVariant::plain;
    std::optional<ObjectId> focus;
    try {
      variant = parse_zoom_variant(j.value("variant", std::string("plain")));
      if (j.contains("focus")) focus = j.at("focus").get<ObjectId>();
    } catch (const std::invalid_argument& ex) {
      return error(422, ex.what());
    } catch (const json::exception& ex) {
      return error(422, ex.what());
    }
    const bool in = r_new < base->subset.radius;
    if (in && variant != ZoomVariant::plain && variant != ZoomVariant::greedy)
      return error(422, "zoom-in supports the plain and greedy variants only");
    if (focus && std::find(base->subset.ids.begin(), base->subset.ids.end(), *focus) ==
                     base->subset.ids.end())
      return error(422, "focus " + std::to_string(*focus) + " is not in the solution");

    std::unique_lock lock(e->mutation, std::try_to_lock);
    if (!lock.owns_lock()) return error(409, "dataset '" + base->dataset + "' is busy");
    auto entry = std::make_shared<SolutionEntry>();
    entry->dataset = base->dataset;
    entry->parent = solution_id;
    entry->focus = focus;
    json local;
    if (focus) {
      const auto res = local_zoom(*e->tree, base->subset, *focus, r_new, variant);
      if (!res.local_valid) return error(500, "local zoom failed verification in its region");
      entry->subset = res.merged;
      entry->verification = verify(*e->data, entry->subset, e->metric);
      entry->global = entry->verification.valid();
      json conflicts = json::array();
      for (const auto& c : res.boundary_conflicts)
        conflicts.push_back({{"outside", c.outside}, {"inside", c.inside}, {"distance", c.distance}});
      local = {{"region", res.region},
               {"ids", sorted_ids(res.local.ids)},
               {"boundary_conflicts", conflicts},
               {"uncovered", res.uncovered}};
    } else {
      entry->subset = disc::zoom(*e->tree, base->subset, r_new, variant);
      entry->verification = verify(*e->data, entry->subset, e->metric);
      if (!entry->verification.valid()) return error(500, "zoom output failed verification");
    }
    lock.unlock();

    entry->diff = diff(base->subset.ids, entry->subset.ids);
    add_solution(entry);
    json out = describe(*entry);
    if (focus) out["local"] = local;
    return {201, out};
  } catch (const HttpError& ex) {
    return error(ex.status, ex.what());
  } catch (const std::invalid_argument& ex) {
    return error(422, ex.what());
  }
}

Response Service::get_solution(const std::string& id,
                               const std::optional<std::string>& reference) const {
  const auto s = find_solution(id);
  if (!s) return error(404, "unknown solution '" + id + "'");
  const auto e = find_dataset(s->dataset);
  if (!e) return error(404, "dataset of solution '" + id + "' is gone");
  std::optional<std::span<const ObjectId>> ref;
  std::shared_ptr<const SolutionEntry> other;
  if (reference) {
    other = find_solution(*reference);
    if (!other) return error(404, "unknown reference solution '" + *reference + "'");
    if (other->dataset != s->dataset)
      return error(422, "reference solution belongs to another dataset");
    ref = std::span<const ObjectId>(other->subset.ids);
  }
  json out = describe(*s);
  out["quality"] = to_json(quality(*e->data, s->subset.ids, s->subset.radius, e->metric, ref));
  return {200, out};
}

std::unique_lock<std::mutex> Service::lock_dataset(const std::string& id) {
  const auto e = find_dataset(id);
  if (!e) throw std::out_of_range("unknown dataset '" + id + "'");
  return std::unique_lock(e->mutation);
}

std::shared_ptr<Service::DatasetEntry> Service::find_dataset(const std::string& id) const {
  std::shared_lock lock(store_mutex_);
  const auto it = datasets_.find(id);
  return it == datasets_.end() ? nullptr : it->second;
}

std::shared_ptr<const Service::SolutionEntry> Service::find_solution(const std::string& id) const {
  std::shared_lock lock(store_mutex_);
  const auto it = solutions_.find(id);
  return it == solutions_.end() ? nullptr : it->second;
}

std::string Service::add_dataset(std::shared_ptr<const Dataset> data, Metric metric,
                                 std::size_t capacity) {
  auto e = std::make_shared<DatasetEntry>();
  e->data = std::move(data);
  e->metric = metric;
  e->capacity = capacity;
  MTreeConfig cfg;
  cfg.node_capacity = capacity;
  e->tree = std::make_unique<MTree>(e->data, metric, cfg);
  {
    std::unique_lock lock(store_mutex_);
    e->id = "d" + std::to_string(next_dataset_++);
    datasets_[e->id] = e;
  }
  persist();
  return e->id;
}

std::string Service::add_solution(std::shared_ptr<SolutionEntry> entry) {
  {
    std::unique_lock lock(store_mutex_);
    entry->id = "s" + std::to_string(next_solution_++);
    solutions_[entry->id] = entry;
  }
  persist();
  return entry->id;
}

json Service::summary(const DatasetEntry& e) const {
  const Dataset& d = *e.data;
  json extent = nullptr;
  if (d.kind() == PointKind::numeric) {
    extent = json::array();
    for (std::size_t j = 0; j < d.dim(); ++j) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const auto& p : d.points()) {
        lo = std::min(lo, p.coords[j]);
        hi = std::max(hi, p.coords[j]);
      }
      extent.push_back({lo, hi});
    }
  }
  return {{"id", e.id},
          {"n", d.size()},
          {"d", d.dim()},
          {"kind", to_string(d.kind())},
          {"metric", to_string(e.metric)},
          {"columns", d.column_names()},
          {"capacity", e.capacity},
          {"extent", extent}};
}

json Service::describe(const SolutionEntry& s) const {
  json j{{"id", s.id},
         {"dataset", s.dataset},
         {"radius", s.subset.radius},
         {"algorithm", s.subset.algorithm},
         {"ids", s.subset.ids},
         {"size", s.subset.size()},
         {"access_cost", s.subset.access_cost},
         {"verification", to_json(s.verification)},
         {"scope", s.global ? "global" : "local"}};
  if (s.parent) j["parent"] = *s.parent;
  if (s.diff) j["diff"] = to_json(*s.diff);
  if (s.focus) j["focus"] = *s.focus;
  return j;
}

json Service::snapshot() const {
  std::shared_lock lock(store_mutex_);
  json ds = json::array(), ss = json::array();
  for (const auto& [id, e] : datasets_)
    ds.push_back({{"id", id},
                  {"kind", to_string(e->data->kind())},
                  {"metric", to_string(e->metric)},
                  {"capacity", e->capacity},
                  {"columns", e->data->column_names()},
                  {"points", points_json(*e->data)}});
  for (const auto& [id, s] : solutions_) {
    json j{{"id", id},
           {"dataset", s->dataset},
           {"subset", to_json(s->subset, false)},
           {"independent", s->independent},
           {"verification", to_json(s->verification)},
           {"global", s->global}};
    if (s->parent) j["parent"] = *s->parent;
    if (s->diff) j["diff"] = to_json(*s->diff);
    if (s->focus) j["focus"] = *s->focus;
    ss.push_back(j);
  }
  return {{"next_dataset", next_dataset_},
          {"next_solution", next_solution_},
          {"datasets", ds},
          {"solutions", ss}};
}

void Service::restore(const json& snap) {
  std::map<std::string, std::shared_ptr<DatasetEntry>> datasets;
  std::map<std::string, std::shared_ptr<const SolutionEntry>> solutions;
  for (const auto& j : snap.at("datasets")) {
    auto e = std::make_shared<DatasetEntry>();
    e->id = j.at("id").get<std::string>();
    e->data = dataset_from_json(j);
    e->metric = parse_metric(j.at("metric").get<std::string>());
    e->capacity = j.at("capacity").get<std::size_t>();
    MTreeConfig cfg;
    cfg.node_capacity = e->capacity;
    e->tree = std::make_unique<MTree>(e->data, e->metric, cfg);
    datasets[e->id] = e;
  }
  for (const auto& j : snap.at("solutions")) {
    auto s = std::make_shared<SolutionEntry>();
    s->id = j.at("id").get<std::string>();
    s->dataset = j.at("dataset").get<std::string>();
    s->subset = subset_from_json(j.at("subset"));
    s->independent = j.at("independent").get<bool>();
    s->verification = {j.at("verification").at("coverage").get<bool>(),
                       j.at("verification").at("independence").get<bool>()};
    s->global = j.at("global").get<bool>();
    if (j.contains("parent")) s->parent = j.at("parent").get<std::string>();
    if (j.contains("diff"))
      s->diff = ZoomDiff{j["diff"].at("kept").get<std::vector<ObjectId>>(),
                         j["diff"].at("added").get<std::vector<ObjectId>>(),
                         j["diff"].at("removed").get<std::vector<ObjectId>>()};
    if (j.contains("focus")) s->focus = j.at("focus").get<ObjectId>();
    solutions[s->id] = s;
  }
  std::unique_lock lock(store_mutex_);
  datasets_ = std::move(datasets);
  solutions_ = std::move(solutions);
  next_dataset_ = snap.at("next_dataset").get<std::uint64_t>();
  next_solution_ = snap.at("next_solution").get<std::uint64_t>();
}

void Service::persist() const {
  if (config_.persist_path.empty()) return;
  std::lock_guard guard(persist_mutex_);
  const std::string tmp = config_.persist_path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << snapshot().dump();
  }
  std::filesystem::rename(tmp, config_.persist_path);
}

// ---------------------------------------------------------------------------

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;

  explicit Impl(Service& s) : service(s) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      const auto r = service.handle(req.method, req.target, req.body,
                                    req.get_header_value("Content-Type"));
      res.status = r.status;
      res.set_content(r.body.dump(), "application/json");
    };
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    server.set_payload_max_length(std::size_t{512} << 20);
    server.Get(".*", forward);
    server.Post(".*", forward);
    server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int HttpServer::bind_any(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool HttpServer::run() { return impl_->server.listen_after_bind(); }
void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}
void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace disc
