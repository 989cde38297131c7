#include "dpfuzz/fuzz.hpp"

#include <algorithm>
#include <chrono>

#include "dpfuzz/mutate.hpp"

namespace dpfuzz {

bool admit(const CoverageMap& cov, const ExecutionRecord& record) {
  if (record.status != ExecStatus::ok) return false;
  const auto it = cov.find(record.path);
  if (it == cov.end()) return true;
  for (const auto& s : it->second)
    if (s.size == record.size) return record.cost > s.cost;
  return true;
}

void record_admission(CoverageMap& cov, PopulationMap& pop, const ExecutionRecord& record) {
  auto& samples = cov[record.path];
  auto& inputs = pop[record.path];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].size == record.size) {
      samples[i].cost = record.cost;
      inputs[i] = record.input;
      return;
    }
  }
  samples.push_back({record.size, record.cost});
  inputs.push_back(record.input);
}

const char* to_string(Policy policy) {
  switch (policy) {
    case Policy::dpfuzz: return "dpfuzz";
    case Policy::slowfuzz: return "slowfuzz";
    case Policy::perffuzz: return "perffuzz";
  }
  return "unknown";
}

Policy policy_from_string(const std::string& s) {
  if (s == "dpfuzz") return Policy::dpfuzz;
  if (s == "slowfuzz") return Policy::slowfuzz;
  if (s == "perffuzz") return Policy::perffuzz;
  throw std::invalid_argument("unknown policy '" + s + "'");
}

const char* to_string(FuzzEvent::Kind kind) {
  switch (kind) {
    case FuzzEvent::Kind::admit: return "admit";
    case FuzzEvent::Kind::cluster: return "cluster";
    case FuzzEvent::Kind::reject: return "reject";
  }
  return "unknown";
}

void FuzzConfig::check() const {
  if (max_iterations < 1) throw ConfigError("max iterations must be >= 1");
  if (!(time_budget_secs >= 0.0)) throw ConfigError("time budget must be >= 0");
  if (cluster_interval < 1) throw ConfigError("cluster interval must be >= 1");
  if (target_clusters < 1) throw ConfigError("target cluster count must be >= 1");
  if (epsilon && !(*epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
  if (separation && !(*separation > 0.0)) throw ConfigError("separation must be > 0");
  if (seeds.empty()) throw ConfigError("seed corpus is empty");
  if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0))
    throw ConfigError("crossover probability must lie in [0, 1]");
}

const TargetInput& select(const ClusterSet& clusters, const CoverageMap& cov, const PopulationMap& pop, Rng& rng) {
  if (pop.empty()) throw std::invalid_argument("select: empty population");
  std::vector<std::vector<PathId>> groups(clusters.k);
  std::vector<PathId> unassigned;
  for (const auto& [path, inputs] : pop) {
    if (inputs.empty()) continue;
    const auto it = clusters.assignment.find(path);
    if (it != clusters.assignment.end() && it->second < groups.size()) groups[it->second].push_back(path);
    else unassigned.push_back(path);
  }
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  if (!unassigned.empty()) groups.push_back(std::move(unassigned));
  if (groups.empty()) throw std::invalid_argument("select: empty population");

  const auto& group = groups[rng.below(groups.size())];
  std::vector<double> weights;
  for (const auto& path : group) {
    double score = 0.0;
    for (const auto& s : cov.at(path)) score = std::max(score, s.cost);
    weights.push_back(score > 0.0 ? score : 1.0);
  }
  const PathId path = group[rng.weighted(weights)];
  const auto& samples = cov.at(path);
  weights.clear();
  for (const auto& s : samples) weights.push_back(s.cost > 0.0 ? s.cost : 1.0);
  return pop.at(path)[rng.weighted(weights)];
}

GlobalPopulation::GlobalPopulation(Policy policy) : policy_(policy) {
  if (policy == Policy::dpfuzz) throw std::invalid_argument("GlobalPopulation: dpfuzz keeps per-path populations");
}

bool GlobalPopulation::admit(const ExecutionRecord& record) const {
  if (record.status != ExecStatus::ok) return false;
  if (policy_ == Policy::slowfuzz) {
    for (double c : costs_)
      if (!(record.cost > c)) return false;
    return true;
  }
  for (auto e : record.edges) {
    const auto it = edge_best_.find(e);
    if (it == edge_best_.end() || record.cost > it->second.first) return true;
  }
  return false;
}

void GlobalPopulation::add(const ExecutionRecord& record) {
  const std::size_t idx = inputs_.size();
  inputs_.push_back(record.input);
  costs_.push_back(record.cost);
  if (policy_ != Policy::perffuzz) return;
  for (auto e : record.edges) {
    auto [it, inserted] = edge_best_.try_emplace(e, record.cost, idx);
    if (!inserted && record.cost > it->second.first) it->second = {record.cost, idx};
  }
}

const TargetInput& GlobalPopulation::select(Rng& rng) const {
  if (inputs_.empty()) throw std::invalid_argument("select: empty population");
  if (policy_ == Policy::slowfuzz) return inputs_[rng.below(inputs_.size())];
  std::vector<std::size_t> favored;
  for (const auto& [edge, best] : edge_best_) favored.push_back(best.second);
  std::sort(favored.begin(), favored.end());
  favored.erase(std::unique(favored.begin(), favored.end()), favored.end());
  if (favored.empty()) return inputs_[rng.below(inputs_.size())];
  return inputs_[favored[rng.below(favored.size())]];
}

ModelSnapshot fit_coverage(const CoverageMap& cov) {
  ModelSnapshot snap;
  std::uint64_t max_size = 1;
  for (const auto& [path, samples] : cov) {
    for (const auto& s : samples) max_size = std::max(max_size, s.size);
    try {
      snap.functions.push_back(fit_perf_function(path, samples));
    } catch (const UnmodeledError&) {
    }
  }
  snap.grid = Grid::covering(max_size);
  return snap;
}

namespace {

using Clock = std::chrono::steady_clock;

class Fuzzer {
 public:
  Fuzzer(const TargetSpec& spec, const FuzzConfig& config)
      : spec_(spec), config_(config), rng_(config.rng_seed), start_(Clock::now()) {
    if (config.policy != Policy::dpfuzz) global_.emplace(config.policy);
  }

  FuzzResult run() {
    for (std::size_t i = 0; i < config_.seeds.size(); ++i) {
      auto rec = run_instrumented(spec_, config_.seeds[i]);
      ++result_.samples;
      if (rec.status != ExecStatus::ok)
        throw ConfigError("seed " + std::to_string(i) + " did not run ok: " + to_string(rec.status));
      offer(std::move(rec), 0);
    }
    recluster(0);

    std::uint64_t step = 1;
    result_.stop_reason = "iterations";
    while (true) {
      if (step > config_.max_iterations) break;
      if (global_ == std::nullopt && result_.clusters.separated_count >= config_.target_clusters) {
        result_.stop_reason = "clusters";
        break;
      }
      if (std::chrono::duration<double>(Clock::now() - start_).count() >= config_.time_budget_secs) {
        result_.stop_reason = "time budget";
        break;
      }
      iterate(step);
      if (global_ == std::nullopt && step % config_.cluster_interval == 0) recluster(step);
      ++step;
    }
    result_.iterations = step - 1;
    // Stopping on clusters leaves the deciding clustering in place.
    if (result_.stop_reason != "clusters") recluster(result_.iterations);
    result_.epsilon = epsilon_.value_or(0.0);
    result_.separation = sigma();
    return std::move(result_);
  }

 private:
  double sigma() const { return config_.separation.value_or(4.0 * epsilon_.value_or(0.0)); }

  void iterate(std::uint64_t step) {
    const TargetInput* parent = nullptr;
    const TargetInput* partner = nullptr;
    if (global_) {
      parent = &global_->select(rng_);
      partner = &global_->inputs()[rng_.below(global_->size())];
    } else {
      parent = &select(result_.clusters, result_.coverage, result_.population, rng_);
      partner = &pick_partner(*parent);
    }
    auto child = mutate(*parent, spec_.domain, rng_, partner);
    if (rng_.chance(config_.crossover_probability)) child = crossover(child, *partner, spec_.domain, rng_);
    auto rec = run_instrumented(spec_, child);
    ++result_.samples;
    offer(std::move(rec), step);
  }

  // Partner from the parent's own path when it holds at least two inputs,
  // otherwise from the whole population.
  const TargetInput& pick_partner(const TargetInput& parent) {
    for (const auto& [path, inputs] : result_.population) {
      if (inputs.size() < 2) continue;
      for (const auto& in : inputs)
        if (&in == &parent) return inputs[rng_.below(inputs.size())];
    }
    std::size_t total = 0;
    for (const auto& [path, inputs] : result_.population) total += inputs.size();
    auto idx = rng_.below(total);
    for (const auto& [path, inputs] : result_.population) {
      if (idx < inputs.size()) return inputs[idx];
      idx -= inputs.size();
    }
    return parent;
  }

  void offer(ExecutionRecord rec, std::uint64_t step) {
    if (rec.status != ExecStatus::ok) {
      if (rec.status == ExecStatus::crash) ++result_.crashes;
      else ++result_.timeouts;
      FuzzEvent ev;
      ev.kind = FuzzEvent::Kind::reject;
      ev.iteration = step;
      ev.path = rec.path;
      ev.size = rec.size;
      ev.cost = rec.cost;
      ev.detail = std::string(to_string(rec.status)) + ": " + rec.detail;
      result_.events.push_back(std::move(ev));
      return;
    }
    if (global_) {
      if (!global_->admit(rec)) return;
      global_->add(rec);
    }
    if (!admit(result_.coverage, rec)) return;
    const bool new_path = !result_.coverage.contains(rec.path);
    record_admission(result_.coverage, result_.population, rec);
    FuzzEvent ev;
    ev.kind = FuzzEvent::Kind::admit;
    ev.iteration = step;
    ev.path = rec.path;
    ev.size = rec.size;
    ev.cost = rec.cost;
    ev.new_path = new_path;
    result_.events.push_back(std::move(ev));
  }

  void recluster(std::uint64_t step) {
    auto snap = fit_coverage(result_.coverage);
    if (!epsilon_) {
      if (config_.epsilon) {
        epsilon_ = config_.epsilon;
      } else if (snap.functions.size() >= 2) {
        const double median = median_pairwise_distance(snap.functions, snap.grid);
        if (median > 0.0) epsilon_ = 0.05 * median;
      }
    }
    ClusterSet cs;
    cs.grid = snap.grid;
    if (!snap.functions.empty()) {
      cs = cluster(snap.functions, epsilon_.value_or(0.0), snap.grid, config_.rng_seed);
      cs.separated_count = separated_count(cs, sigma());
    }
    result_.functions = std::move(snap.functions);
    result_.clusters = std::move(cs);
    FuzzEvent ev;
    ev.kind = FuzzEvent::Kind::cluster;
    ev.iteration = step;
    ev.clusters = result_.clusters.k;
    ev.separated = result_.clusters.separated_count;
    result_.events.push_back(std::move(ev));
  }

  const TargetSpec& spec_;
  const FuzzConfig& config_;
  Rng rng_;
  Clock::time_point start_;
  std::optional<GlobalPopulation> global_;
  std::optional<double> epsilon_;
  FuzzResult result_;
};

}  // namespace

FuzzResult fuzz(const TargetSpec& spec, const FuzzConfig& config) {
  spec.check();
  config.check();
  for (std::size_t i = 0; i < config.seeds.size(); ++i) {
    if (!within(spec.domain, config.seeds[i]))
      throw ConfigError("seed " + std::to_string(i) + " lies outside the input domain");
  }
  return Fuzzer(spec, config).run();
}

}  // namespace dpfuzz
