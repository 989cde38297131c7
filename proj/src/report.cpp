#include "dpfuzz/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dpfuzz {

using nlohmann::json;

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// Integral costs print without a fraction (line counts); others keep three decimals.
std::string format_cost(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) return fmt("%.0f", v);
  return fmt("%.3f", v);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::uint64_t max_size(const CoverageMap& cov) {
  std::uint64_t hi = 1;
  for (const auto& [path, samples] : cov)
    for (const auto& s : samples) hi = std::max(hi, s.size);
  return hi;
}

}  // namespace

std::vector<PerfFunction> distinct_functions(const FuzzResult& result, double residual_fraction) {
  std::vector<PerfFunction> out;
  for (const auto& f : result.functions) {
    const auto it = result.coverage.find(f.path);
    if (it == result.coverage.end() || it->second.empty()) continue;
    double mean = 0.0;
    for (const auto& s : it->second) mean += std::fabs(s.cost);
    mean /= static_cast<double>(it->second.size());
    if (f.residual <= residual_fraction * mean) out.push_back(f);
  }
  return out;
}

MetricsRow compute_metrics(const FuzzResult& result, const std::string& target, const std::string& policy,
                           double wall_secs, const MetricsOptions& options) {
  MetricsRow row;
  row.target = target;
  row.policy = policy;
  row.samples = result.samples;
  row.paths = result.coverage.size();
  for (const auto& [path, samples] : result.coverage)
    for (const auto& s : samples) row.worst_cost = std::max(row.worst_cost, s.cost);
  const auto modeled = distinct_functions(result, options.residual_fraction);
  row.functions = modeled.size();
  if (!modeled.empty())
    row.clusters = elbow_k(modeled, options.elbow_threshold, Grid::covering(max_size(result.coverage)), options.seed);
  row.wall_secs = wall_secs;
  return row;
}

std::string format_row(const MetricsRow& row) {
  std::ostringstream os;
  os << row.target << " | " << row.policy << " | #N=" << row.samples << " | W=" << format_cost(row.worst_cost)
     << " | #P=" << row.paths << " | #M=" << row.functions << " | #K=" << row.clusters;
  return os.str();
}

std::string format_table(std::span<const MetricsRow> rows) {
  std::string out;
  for (const auto& r : rows) out += format_row(r) + "\n";
  return out;
}

std::string metrics_csv(std::span<const MetricsRow> rows) {
  std::string out = "target,policy,samples,worst_cost,paths,functions,clusters\n";
  for (const auto& r : rows) {
    out += r.target + "," + r.policy + "," + std::to_string(r.samples) + "," + format_cost(r.worst_cost) + "," +
           std::to_string(r.paths) + "," + std::to_string(r.functions) + "," + std::to_string(r.clusters) + "\n";
  }
  return out;
}

std::string format_path(PathId path) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(path.value));
  return buf;
}

PathId parse_path(const std::string& s) {
  if (s.empty() || s.size() > 16 || s.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
    throw std::invalid_argument("bad path id '" + s + "'");
  return PathId{std::stoull(s, nullptr, 16)};
}

std::string functions_csv(std::span<const PerfFunction> functions, const ClusterSet& clusters) {
  std::string out = "path_id,kind,a,b,n_min,n_max,residual,sample_count,cluster\n";
  for (const auto& f : functions) {
    const auto it = clusters.assignment.find(f.path);
    out += format_path(f.path) + "," + to_string(f.kind) + "," + fmt("%.9g", f.a) + "," + fmt("%.9g", f.b) + "," +
           std::to_string(f.n_min) + "," + std::to_string(f.n_max) + "," + fmt("%.9g", f.residual) + "," +
           std::to_string(f.sample_count) + "," + (it == clusters.assignment.end() ? "" : std::to_string(it->second)) +
           "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr double kPlotLeft = 70, kPlotRight = 500, kPlotTop = 40, kPlotBottom = 380;
constexpr double kWidth = 760;
constexpr int kTicks = 5;

std::string f2(double v) { return fmt("%.2f", v); }

}  // namespace

std::string render_svg(std::span<const PerfFunction> functions, const ClusterSet& clusters) {
  const double height = std::max(420.0, kPlotTop + 20.0 + 16.0 * static_cast<double>(functions.size()));
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f2(kWidth) << "\" height=\"" << f2(height)
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << f2(kWidth) << "\" height=\"" << f2(height) << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << f2(kPlotLeft) << "\" y=\"20.00\" font-size=\"14\">cost vs input size</text>\n";
  if (functions.empty()) {
    os << "<text x=\"" << f2(kPlotLeft) << "\" y=\"" << f2(kPlotTop + 20) << "\">no performance functions</text>\n";
    os << "</svg>\n";
    return os.str();
  }

  Grid grid = clusters.grid;
  std::uint64_t hi = 1;
  for (const auto& f : functions) hi = std::max(hi, f.n_max);
  if (grid.hi < hi) grid = Grid::covering(hi);
  const auto xs = grid.points();
  std::vector<std::vector<double>> ys;
  double ymin = 0.0, ymax = 0.0;
  for (const auto& f : functions) {
    ys.push_back(evaluate(f, grid));
    for (double y : ys.back()) {
      if (!std::isfinite(y)) continue;
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (ymax <= ymin) ymax = ymin + 1.0;
  const double xlo = xs.front();
  const double xhi = xs.size() > 1 ? xs.back() : xlo + 1.0;
  auto px = [&](double x) { return kPlotLeft + (x - xlo) / (xhi - xlo) * (kPlotRight - kPlotLeft); };
  auto py = [&](double y) { return kPlotBottom - (y - ymin) / (ymax - ymin) * (kPlotBottom - kPlotTop); };

  // axes and ticks
  os << "<g stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << f2(kPlotLeft) << "\" y1=\"" << f2(kPlotBottom) << "\" x2=\"" << f2(kPlotRight) << "\" y2=\""
     << f2(kPlotBottom) << "\"/>\n";
  os << "<line x1=\"" << f2(kPlotLeft) << "\" y1=\"" << f2(kPlotTop) << "\" x2=\"" << f2(kPlotLeft) << "\" y2=\""
     << f2(kPlotBottom) << "\"/>\n";
  os << "</g>\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double x = xlo + (xhi - xlo) * i / kTicks;
    const double y = ymin + (ymax - ymin) * i / kTicks;
    os << "<text x=\"" << f2(px(x)) << "\" y=\"" << f2(kPlotBottom + 15) << "\" text-anchor=\"middle\">" << f2(x)
       << "</text>\n";
    os << "<text x=\"" << f2(kPlotLeft - 5) << "\" y=\"" << f2(py(y) + 4) << "\" text-anchor=\"end\">" << f2(y)
       << "</text>\n";
  }
  os << "<text x=\"" << f2((kPlotLeft + kPlotRight) / 2) << "\" y=\"" << f2(kPlotBottom + 32)
     << "\" text-anchor=\"middle\">input size</text>\n";
  os << "<text x=\"15.00\" y=\"" << f2((kPlotTop + kPlotBottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15.00 "
     << f2((kPlotTop + kPlotBottom) / 2) << ")\">cost</text>\n";

  for (std::size_t i = 0; i < functions.size(); ++i) {
    const auto& f = functions[i];
    const auto it = clusters.assignment.find(f.path);
    const std::size_t c = it == clusters.assignment.end() ? 0 : it->second;
    const char* color = it == clusters.assignment.end() ? "#000000" : kPalette[c % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t p = 0; p < xs.size(); ++p) {
      const double y = std::isfinite(ys[i][p]) ? ys[i][p] : ymax;
      os << (p ? " " : "") << f2(px(xs[p])) << "," << f2(py(y));
    }
    os << "\"/>\n";

    const double ly = kPlotTop + 16.0 * static_cast<double>(i);
    std::string label = format_path(f.path).substr(0, 8) + " ";
    label += it == clusters.assignment.end() ? "unclustered" : "cluster " + std::to_string(c);
    label += f.kind == FunctionKind::linear ? " " + fmt("%.3g", f.a) + "n+" + fmt("%.3g", f.b)
                                            : " " + fmt("%.3g", f.a) + "n^" + fmt("%.3g", f.b);
    os << "<line x1=\"" << f2(kPlotRight + 20) << "\" y1=\"" << f2(ly) << "\" x2=\"" << f2(kPlotRight + 40)
       << "\" y2=\"" << f2(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << f2(kPlotRight + 45) << "\" y=\"" << f2(ly + 4) << "\">" << xml_escape(label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// JSON

json input_to_json(const TargetInput& input) {
  if (input.is_bytes()) return json{{"bytes", to_hex(input.bytes())}};
  const auto& rec = input.record();
  json fields = json::array();
  for (const auto& [name, value] : rec.fields) {
    json v;
    std::visit([&](const auto& x) { v = x; }, value);
    fields.push_back({{"name", name}, {"value", v}});
  }
  json j{{"fields", fields}};
  if (rec.shape) j["shape"] = {rec.shape->samples, rec.shape->features};
  if (rec.size_field) j["size_field"] = *rec.size_field;
  return j;
}

TargetInput input_from_json(const json& j) {
  if (j.contains("bytes")) return TargetInput(from_hex(j.at("bytes").get<std::string>()));
  ParamRecord rec;
  for (const auto& f : j.at("fields")) {
    const auto& v = f.at("value");
    ParamValue value;
    if (v.is_string()) value = v.get<std::string>();
    else if (v.is_number_integer()) value = v.get<std::int64_t>();
    else if (v.is_number_float()) value = v.get<double>();
    else throw std::invalid_argument("unsupported parameter value in results");
    rec.fields.emplace_back(f.at("name").get<std::string>(), std::move(value));
  }
  if (j.contains("shape")) rec.shape = DataShape{j["shape"].at(0).get<std::uint64_t>(), j["shape"].at(1).get<std::uint64_t>()};
  if (j.contains("size_field")) rec.size_field = j["size_field"].get<std::string>();
  return TargetInput(std::move(rec));
}

TargetSpec TargetRef::to_spec() const {
  TargetSpec spec;
  if (!builtin.empty()) {
    spec = builtin_spec(builtin);
    if (max_len) {
      if (auto* d = std::get_if<ByteDomain>(&spec.domain)) d->max_len = max_len;
    }
  } else {
    spec = external_spec(external_cmd, ByteDomain{0, max_len ? max_len : 64});
  }
  spec.cost_mode = cost_mode;
  spec.timeout_secs = timeout_secs;
  return spec;
}

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json function_json(const PerfFunction& f) {
  return {{"path", format_path(f.path)}, {"kind", to_string(f.kind)},     {"a", f.a},
          {"b", f.b},                    {"n_min", f.n_min},               {"n_max", f.n_max},
          {"residual", f.residual},      {"sample_count", f.sample_count}};
}

PerfFunction function_from(const json& j) {
  PerfFunction f;
  f.path = parse_path(j.at("path").get<std::string>());
  f.kind = function_kind_from_string(j.at("kind").get<std::string>());
  f.a = j.at("a").get<double>();
  f.b = j.at("b").get<double>();
  f.n_min = j.at("n_min").get<std::uint64_t>();
  f.n_max = j.at("n_max").get<std::uint64_t>();
  f.residual = j.at("residual").get<double>();
  f.sample_count = j.at("sample_count").get<std::size_t>();
  return f;
}

json clusters_json(const ClusterSet& cs) {
  json assignment = json::object();
  for (const auto& [path, c] : cs.assignment) assignment[format_path(path)] = c;
  return {{"k", cs.k},
          {"epsilon", cs.epsilon},
          {"separated_count", cs.separated_count},
          {"grid", {{"lo", cs.grid.lo}, {"hi", cs.grid.hi}, {"step", cs.grid.step}}},
          {"assignment", assignment},
          {"centroids", cs.centroids}};
}

ClusterSet clusters_from(const json& j) {
  ClusterSet cs;
  cs.k = j.at("k").get<std::size_t>();
  cs.epsilon = j.at("epsilon").get<double>();
  cs.separated_count = j.at("separated_count").get<std::size_t>();
  const auto& g = j.at("grid");
  cs.grid = Grid{g.at("lo").get<std::uint64_t>(), g.at("hi").get<std::uint64_t>(), g.at("step").get<std::uint64_t>()};
  for (const auto& [path, c] : j.at("assignment").items()) cs.assignment[parse_path(path)] = c.get<std::size_t>();
  cs.centroids = j.at("centroids").get<std::vector<std::vector<double>>>();
  return cs;
}

json event_json(const FuzzEvent& e) {
  json j{{"kind", to_string(e.kind)}, {"iteration", e.iteration}};
  if (e.kind == FuzzEvent::Kind::cluster) {
    j["clusters"] = e.clusters;
    j["separated"] = e.separated;
  } else {
    j["path"] = format_path(e.path);
    j["size"] = e.size;
    j["cost"] = e.cost;
    if (e.kind == FuzzEvent::Kind::admit) j["new_path"] = e.new_path;
    else j["detail"] = e.detail;
  }
  return j;
}

FuzzEvent event_from(const json& j) {
  FuzzEvent e;
  const auto kind = j.at("kind").get<std::string>();
  e.kind = kind == "admit" ? FuzzEvent::Kind::admit : kind == "cluster" ? FuzzEvent::Kind::cluster : FuzzEvent::Kind::reject;
  e.iteration = j.at("iteration").get<std::uint64_t>();
  if (e.kind == FuzzEvent::Kind::cluster) {
    e.clusters = j.at("clusters").get<std::size_t>();
    e.separated = j.at("separated").get<std::size_t>();
  } else {
    e.path = parse_path(j.at("path").get<std::string>());
    e.size = j.at("size").get<std::uint64_t>();
    e.cost = j.at("cost").get<double>();
    e.new_path = j.value("new_path", false);
    e.detail = j.value("detail", std::string());
  }
  return e;
}

}  // namespace

json run_to_json(const RunRecord& run) {
  const auto& t = run.target;
  const auto& c = run.config;
  const auto& r = run.result;

  json seeds = json::array();
  for (const auto& s : c.seeds) seeds.push_back(input_to_json(s));

  json paths = json::array();
  for (const auto& [path, samples] : r.coverage) {
    const auto& inputs = r.population.at(path);
    json list = json::array();
    for (std::size_t i = 0; i < samples.size(); ++i)
      list.push_back({{"size", samples[i].size}, {"cost", samples[i].cost}, {"input", input_to_json(inputs[i])}});
    paths.push_back({{"path", format_path(path)}, {"samples", list}});
  }
  json functions = json::array();
  for (const auto& f : r.functions) functions.push_back(function_json(f));
  json events = json::array();
  for (const auto& e : r.events) events.push_back(event_json(e));

  return {
      {"dpfuzz_schema", kSchemaVersion},
      {"target",
       {{"builtin", t.builtin},
        {"external_cmd", t.external_cmd},
        {"display_name", t.display_name},
        {"cost_mode", to_string(t.cost_mode)},
        {"timeout_secs", t.timeout_secs},
        {"max_len", t.max_len}}},
      {"config",
       {{"max_iterations", c.max_iterations},
        {"cluster_interval", c.cluster_interval},
        {"epsilon", optional_json(c.epsilon)},
        {"separation", optional_json(c.separation)},
        {"target_clusters", c.target_clusters},
        {"time_budget_secs", c.time_budget_secs},
        {"rng_seed", c.rng_seed},
        {"policy", to_string(c.policy)},
        {"crossover_probability", c.crossover_probability},
        {"elbow_threshold", run.elbow_threshold},
        {"seeds", seeds}}},
      {"result",
       {{"iterations", r.iterations},
        {"samples", r.samples},
        {"crashes", r.crashes},
        {"timeouts", r.timeouts},
        {"epsilon", r.epsilon},
        {"separation", r.separation},
        {"stop_reason", r.stop_reason},
        {"paths", paths},
        {"functions", functions},
        {"clusters", clusters_json(r.clusters)},
        {"events", events}}},
  };
}

RunRecord run_from_json(const json& j) {
  if (!j.is_object() || j.value("dpfuzz_schema", 0) != kSchemaVersion)
    throw std::runtime_error("results: missing or unsupported dpfuzz_schema");
  RunRecord run;
  const auto& t = j.at("target");
  run.target.builtin = t.at("builtin").get<std::string>();
  run.target.external_cmd = t.at("external_cmd").get<std::string>();
  run.target.display_name = t.at("display_name").get<std::string>();
  run.target.cost_mode = cost_mode_from_string(t.at("cost_mode").get<std::string>());
  run.target.timeout_secs = t.at("timeout_secs").get<double>();
  run.target.max_len = t.at("max_len").get<std::size_t>();

  const auto& c = j.at("config");
  run.config.max_iterations = c.at("max_iterations").get<std::uint64_t>();
  run.config.cluster_interval = c.at("cluster_interval").get<std::uint64_t>();
  run.config.epsilon = optional_from(c.at("epsilon"));
  run.config.separation = optional_from(c.at("separation"));
  run.config.target_clusters = c.at("target_clusters").get<std::size_t>();
  run.config.time_budget_secs = c.at("time_budget_secs").get<double>();
  run.config.rng_seed = c.at("rng_seed").get<std::uint64_t>();
  run.config.policy = policy_from_string(c.at("policy").get<std::string>());
  run.config.crossover_probability = c.at("crossover_probability").get<double>();
  run.elbow_threshold = c.at("elbow_threshold").get<double>();
  for (const auto& s : c.at("seeds")) run.config.seeds.push_back(input_from_json(s));

  const auto& r = j.at("result");
  auto& out = run.result;
  out.iterations = r.at("iterations").get<std::uint64_t>();
  out.samples = r.at("samples").get<std::uint64_t>();
  out.crashes = r.at("crashes").get<std::uint64_t>();
  out.timeouts = r.at("timeouts").get<std::uint64_t>();
  out.epsilon = r.at("epsilon").get<double>();
  out.separation = r.at("separation").get<double>();
  out.stop_reason = r.at("stop_reason").get<std::string>();
  for (const auto& p : r.at("paths")) {
    const PathId path = parse_path(p.at("path").get<std::string>());
    auto& samples = out.coverage[path];
    auto& inputs = out.population[path];
    for (const auto& s : p.at("samples")) {
      samples.push_back({s.at("size").get<std::uint64_t>(), s.at("cost").get<double>()});
      inputs.push_back(input_from_json(s.at("input")));
    }
  }
  for (const auto& f : r.at("functions")) out.functions.push_back(function_from(f));
  out.clusters = clusters_from(r.at("clusters"));
  for (const auto& e : r.at("events")) out.events.push_back(event_from(e));
  return run;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void save_results(const std::filesystem::path& dir, const RunRecord& run, double wall_secs) {
  std::filesystem::create_directories(dir);
  write_file(dir / "results.json", run_to_json(run).dump(1) + "\n");
  write_file(dir / "timing.json", json{{"wall_secs", wall_secs}}.dump(1) + "\n");
}

RunRecord load_results(const std::filesystem::path& dir) {
  const auto text = read_file(dir / "results.json");
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("results.json is not valid JSON: " + std::string(e.what()));
  }
  try {
    return run_from_json(j);
  } catch (const json::exception& e) {
    throw std::runtime_error("results.json is malformed: " + std::string(e.what()));
  }
}

double load_wall_secs(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(dir / "timing.json")) return 0.0;
  return json::parse(read_file(dir / "timing.json")).value("wall_secs", 0.0);
}

MetricsRow write_reports(const std::filesystem::path& dir) {
  const auto run = load_results(dir);
  const auto& r = run.result;
  MetricsOptions options;
  options.elbow_threshold = run.elbow_threshold;
  options.seed = run.config.rng_seed;
  const auto row =
      compute_metrics(r, run.target.display_name, to_string(run.config.policy), load_wall_secs(dir), options);
  write_file(dir / "functions.csv", functions_csv(r.functions, r.clusters));
  write_file(dir / "metrics.csv", metrics_csv(std::span(&row, 1)));
  write_file(dir / "clusters.svg", render_svg(r.functions, r.clusters));
  return row;
}

// ---------------------------------------------------------------------------
// explanations

namespace {

json node_json(const DecisionTree& tree, std::size_t id) {
  const auto& n = tree.nodes[id];
  json j{{"label", n.label}, {"purity", n.purity}, {"support", n.support}, {"gini", n.gini}};
  if (n.leaf) return j;
  j["feature"] = tree.columns[n.feature].name;
  j["predicate"] = tree.predicate(n, true);
  if (n.categorical) j["category"] = tree.columns[n.feature].categories[static_cast<std::size_t>(n.threshold)];
  else j["threshold"] = n.threshold;
  j["gain"] = n.gain;
  j["left"] = node_json(tree, n.left);
  j["right"] = node_json(tree, n.right);
  return j;
}

json space_json(const SpaceExplanation& s) {
  json columns = json::array();
  for (const auto& c : s.features.columns) columns.push_back(c.name);
  return {{"columns", columns},
          {"rows", s.features.row_count()},
          {"labels", s.labels},
          {"accuracy", s.accuracy},
          {"depth", s.tree.depth()},
          {"leaves", s.tree.leaf_count()},
          {"tree", tree_to_json(s.tree)}};
}

void append_rules(std::string& out, const char* space, const SpaceExplanation& s) {
  out += "[" + std::string(space) + "] training accuracy " + fmt("%.3f", s.accuracy) + "\n";
  for (const auto& [label, rules] : s.predicates) {
    for (const auto& rule : rules) {
      out += "[" + std::string(space) + "] cluster " + std::to_string(label) + ": " + rule.text() + "  (purity " +
             fmt("%.3f", rule.purity) + ", support " + std::to_string(rule.support) + ")\n";
    }
  }
}

}  // namespace

json tree_to_json(const DecisionTree& tree) {
  if (tree.nodes.empty()) return nullptr;
  return node_json(tree, 0);
}

json explanation_to_json(const Explanation& e) {
  json j{{"failed_runs", e.failed_runs}};
  if (e.input) j["input"] = space_json(*e.input);
  if (e.internal) j["internal"] = space_json(*e.internal);
  return j;
}

std::string predicates_text(const Explanation& e) {
  std::string out;
  if (e.input) append_rules(out, "input", *e.input);
  if (e.internal) append_rules(out, "internal", *e.internal);
  return out;
}

}  // namespace dpfuzz
