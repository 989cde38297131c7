#include <cmath>

#include "doctest.h"
#include "dpfuzz/fuzz.hpp"

using namespace dpfuzz;

namespace {

ExecutionRecord record(std::uint64_t path, std::uint64_t size, double cost, EdgeSet edges = {}) {
  ExecutionRecord r;
  r.path = PathId{path};
  r.size = size;
  r.cost = cost;
  r.edges = std::move(edges);
  r.input = Bytes(size, static_cast<std::uint8_t>(path));
  return r;
}

FuzzConfig config_for(const std::string& target, std::uint64_t iterations) {
  FuzzConfig c;
  c.seeds = find_builtin(target)->seeds;
  c.max_iterations = iterations;
  c.rng_seed = 7;
  return c;
}

double binomial_sigma(double n, double p) { return std::sqrt(n * p * (1 - p)); }

}  // namespace

TEST_CASE("admit rule") {
  CoverageMap cov;
  PopulationMap pop;
  CHECK(admit(cov, record(1, 4, 100)));
  record_admission(cov, pop, record(1, 4, 100));
  CHECK_FALSE(admit(cov, record(1, 4, 90)));
  CHECK_FALSE(admit(cov, record(1, 4, 100)));
  CHECK(admit(cov, record(1, 4, 101)));
  CHECK(admit(cov, record(1, 5, 1)));
  CHECK(admit(cov, record(2, 4, 0)));
  auto crashed = record(3, 1, 1);
  crashed.status = ExecStatus::crash;
  CHECK_FALSE(admit(cov, crashed));
}

TEST_CASE("admission keeps coverage and population aligned") {
  CoverageMap cov;
  PopulationMap pop;
  record_admission(cov, pop, record(1, 4, 10));
  record_admission(cov, pop, record(1, 5, 12));
  auto better = record(1, 4, 20);
  better.input = Bytes{9, 9, 9, 9};
  record_admission(cov, pop, better);
  REQUIRE(cov.at(PathId{1}).size() == 2);
  REQUIRE(pop.at(PathId{1}).size() == 2);
  CHECK(cov.at(PathId{1})[0] == Sample{4, 20});
  CHECK(pop.at(PathId{1})[0].bytes() == Bytes{9, 9, 9, 9});
}

TEST_CASE("selection with a single input is forced") {
  CoverageMap cov;
  PopulationMap pop;
  record_admission(cov, pop, record(1, 3, 5));
  ClusterSet cs;
  cs.k = 1;
  cs.assignment[PathId{1}] = 0;
  Rng rng(1);
  for (int i = 0; i < 10; ++i) CHECK(&select(cs, cov, pop, rng) == &pop.at(PathId{1})[0]);
  CHECK_THROWS(select(cs, CoverageMap{}, PopulationMap{}, rng));
}

TEST_CASE("zero-score paths keep the fallback weight") {
  CoverageMap cov;
  PopulationMap pop;
  record_admission(cov, pop, record(1, 3, 100));
  record_admission(cov, pop, record(2, 3, 0));
  ClusterSet cs;
  cs.k = 1;
  cs.assignment = {{PathId{1}, 0}, {PathId{2}, 0}};
  Rng rng(12345);
  const int draws = 10000;
  int zero = 0;
  for (int i = 0; i < draws; ++i) zero += &select(cs, cov, pop, rng) == &pop.at(PathId{2})[0];
  // weights 100 and 1
  const double p = 1.0 / 101.0;
  CHECK(std::fabs(zero - draws * p) <= 3 * binomial_sigma(draws, p));
}

TEST_CASE("clusters are drawn uniformly") {
  CoverageMap cov;
  PopulationMap pop;
  record_admission(cov, pop, record(1, 3, 1000));
  record_admission(cov, pop, record(2, 3, 1));
  ClusterSet cs;
  cs.k = 2;
  cs.assignment = {{PathId{1}, 0}, {PathId{2}, 1}};
  Rng rng(777);
  const int draws = 10000;
  int first = 0;
  for (int i = 0; i < draws; ++i) first += &select(cs, cov, pop, rng) == &pop.at(PathId{1})[0];
  CHECK(std::fabs(first - draws * 0.5) <= 3 * binomial_sigma(draws, 0.5));
}

TEST_CASE("inputs within a path are drawn by cost") {
  CoverageMap cov;
  PopulationMap pop;
  record_admission(cov, pop, record(1, 3, 30));
  record_admission(cov, pop, record(1, 4, 10));
  ClusterSet cs;
  cs.k = 1;
  cs.assignment[PathId{1}] = 0;
  Rng rng(5);
  const int draws = 8000;
  int heavy = 0;
  for (int i = 0; i < draws; ++i) heavy += &select(cs, cov, pop, rng) == &pop.at(PathId{1})[0];
  CHECK(std::fabs(heavy - draws * 0.75) <= 3 * binomial_sigma(draws, 0.75));
}

TEST_CASE("slowfuzz policy") {
  GlobalPopulation g(Policy::slowfuzz);
  CHECK(g.admit(record(1, 1, 5)));  // vacuous maximum
  g.add(record(1, 1, 100));
  CHECK_FALSE(g.admit(record(2, 1, 100)));
  CHECK(g.admit(record(2, 1, 101)));
  CHECK_THROWS(GlobalPopulation(Policy::dpfuzz));
}

TEST_CASE("perffuzz policy") {
  GlobalPopulation g(Policy::perffuzz);
  g.add(record(1, 4, 100, {1, 2}));
  CHECK(g.admit(record(2, 1, 1, {1, 9})));  // brand-new edge, low cost
  CHECK_FALSE(g.admit(record(2, 1, 50, {1, 2})));
  CHECK(g.admit(record(2, 1, 150, {2})));
  g.add(record(3, 2, 150, {2}));
  // input 0 still owns edge 1, input 1 owns edge 2
  Rng rng(2);
  int first = 0;
  for (int i = 0; i < 2000; ++i) first += &g.select(rng) == &g.inputs()[0];
  CHECK(first > 800);
  CHECK(first < 1200);
}

TEST_CASE("config validation") {
  auto c = config_for("parity", 10);
  CHECK_NOTHROW(c.check());
  auto bad = c;
  bad.max_iterations = 0;
  CHECK_THROWS_AS(bad.check(), ConfigError);
  bad = c;
  bad.cluster_interval = 0;
  CHECK_THROWS_AS(bad.check(), ConfigError);
  bad = c;
  bad.target_clusters = 0;
  CHECK_THROWS_AS(bad.check(), ConfigError);
  bad = c;
  bad.separation = 0.0;
  CHECK_THROWS_AS(bad.check(), ConfigError);
  bad = c;
  bad.seeds.clear();
  CHECK_THROWS_AS(bad.check(), ConfigError);

  bad = c;
  bad.seeds = {Bytes(40, 1)};
  CHECK_THROWS_AS(fuzz(builtin_spec("parity"), bad), ConfigError);
  bad.seeds = {Bytes{0}};
  CHECK_THROWS_AS(fuzz(builtin_spec("divzero"), bad), ConfigError);
}

TEST_CASE("constant performance yields one cluster") {
  auto c = config_for("constant", 3000);
  const auto r = fuzz(builtin_spec("constant"), c);
  CHECK(r.coverage.size() >= 1);
  CHECK(r.clusters.k == 1);
  CHECK(r.clusters.separated_count == 1);
  CHECK(r.samples >= c.seeds.size());
}

TEST_CASE("parity target separates linear from quadratic") {
  auto c = config_for("parity", 50000);
  const auto r = fuzz(builtin_spec("parity"), c);
  CHECK(r.clusters.separated_count >= 2);
  if (r.stop_reason == "clusters") CHECK(r.clusters.separated_count >= c.target_clusters);
  bool linear = false, quadratic = false;
  for (const auto& f : r.functions) {
    if (f.n_max < 8) continue;
    if (f.kind == FunctionKind::linear && std::fabs(f.a - 1) < 0.2) linear = true;
    if (f.kind == FunctionKind::power_law && std::fabs(f.b - 2) <= 0.2) quadratic = true;
  }
  CHECK(linear);
  CHECK(quadratic);
}

TEST_CASE("fuzzing is deterministic and coverage is monotone") {
  auto c = config_for("quicksort", 4000);
  c.cluster_interval = 500;
  const auto a = fuzz(builtin_spec("quicksort"), c);
  const auto b = fuzz(builtin_spec("quicksort"), c);
  CHECK(a.coverage == b.coverage);
  CHECK(a.population == b.population);
  CHECK(a.clusters.assignment == b.clusters.assignment);
  CHECK(a.samples == b.samples);
  CHECK(a.events.size() == b.events.size());
  for (const auto& [path, samples] : a.coverage) CHECK(a.population.at(path).size() == samples.size());

  // Replay the admit log: paths never disappear and retained costs only grow.
  std::map<std::pair<PathId, std::uint64_t>, double> best;
  for (const auto& e : a.events) {
    if (e.kind != FuzzEvent::Kind::admit) continue;
    const auto key = std::make_pair(e.path, e.size);
    const auto it = best.find(key);
    if (it != best.end()) CHECK(e.cost > it->second);
    best[key] = e.cost;
  }
  for (const auto& [key, cost] : best) {
    const auto& samples = a.coverage.at(key.first);
    bool found = false;
    for (const auto& s : samples) found |= s.size == key.second && s.cost == cost;
    CHECK(found);
  }
}

TEST_CASE("baseline policies run and keep costs increasing") {
  auto c = config_for("insertionx", 3000);
  c.policy = Policy::slowfuzz;
  const auto r = fuzz(builtin_spec("insertionx"), c);
  double last = -1;
  for (const auto& e : r.events) {
    if (e.kind != FuzzEvent::Kind::admit) continue;
    CHECK(e.cost > last);
    last = e.cost;
  }
  c.policy = Policy::perffuzz;
  const auto p = fuzz(builtin_spec("insertionx"), c);
  CHECK(p.samples == 3000 + c.seeds.size());
  CHECK(p.stop_reason == "iterations");
}

TEST_CASE("a zero budget only runs the seeds") {
  auto c = config_for("quicksort", 1000);
  c.time_budget_secs = 0;
  const auto r = fuzz(builtin_spec("quicksort"), c);
  CHECK(r.samples == c.seeds.size());
  CHECK(r.iterations == 0);
  CHECK(r.stop_reason == "time budget");
}

TEST_CASE("crashes are counted, never admitted") {
  auto c = config_for("divzero", 2000);
  const auto r = fuzz(builtin_spec("divzero"), c);
  CHECK(r.crashes > 0);
  std::size_t rejects = 0;
  for (const auto& e : r.events) rejects += e.kind == FuzzEvent::Kind::reject;
  CHECK(rejects == r.crashes);
  for (const auto& [path, inputs] : r.population)
    for (const auto& in : inputs)
      for (auto v : in.bytes()) CHECK(v != 0);
}

TEST_CASE("policy names") {
  CHECK(policy_from_string("perffuzz") == Policy::perffuzz);
  CHECK(std::string(to_string(Policy::slowfuzz)) == "slowfuzz");
  CHECK_THROWS(policy_from_string("afl"));
}
