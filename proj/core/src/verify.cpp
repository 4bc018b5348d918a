// Copyright 2026 The qghz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qghz/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qghz/gates.hpp"

namespace qghz {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kFidelityTolerance = 1e-12;
constexpr double kGramTolerance = 1e-12;
constexpr double kProbabilityTolerance = 1e-9;
constexpr double kOracleTolerance = 1e-10;
constexpr double kNormTolerance = 1e-12;
// Above this many labels the Gram check is restricted to same-parity blocks;
// different parity classes have disjoint supports, which is checked instead.
constexpr std::size_t kFullGramLimit = 4096;

class Stopwatch {
 public:
  explicit Stopwatch(double& sink_ms) : sink_(sink_ms), start_(Clock::now()) {}
  ~Stopwatch() {
    sink_ += std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }
  Stopwatch(const Stopwatch&) = delete;
  Stopwatch& operator=(const Stopwatch&) = delete;

 private:
  double& sink_;
  Clock::time_point start_;
};

template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

JointDistribution joint_of(const std::vector<WeightedRecord>& records) {
  JointDistribution joint;
  for (const auto& r : records) joint.emplace(std::pair{r.record.oam.levels, r.record.spatial.levels}, r.probability);
  return joint;
}

// Returns {key sets equal, worst probability difference over shared keys}.
std::pair<bool, double> compare_joint(const JointDistribution& a,
                                      const std::map<std::pair<Levels, Levels>, double>& b) {
  bool same = a.size() == b.size();
  double worst = 0.0;
  for (const auto& [key, p] : a) {
    auto it = b.find(key);
    if (it == b.end()) {
      same = false;
      continue;
    }
    worst = std::max(worst, std::abs(p - it->second));
  }
  return {same, worst};
}

std::pair<bool, double> compare_marginal(const std::map<Levels, double>& a,
                                         const std::map<Levels, double>& b) {
  bool same = a.size() == b.size();
  double worst = 0.0;
  for (const auto& [key, p] : a) {
    auto it = b.find(key);
    if (it == b.end()) {
      same = false;
      continue;
    }
    worst = std::max(worst, std::abs(p - it->second));
  }
  return {same, worst};
}

// Per-label results, reduced in label order afterwards.
struct LabelMetrics {
  LabelSummary summary;

  bool initial_factored = false;
  double initial_deviation = 0.0;
  bool parity_factored = false;
  double parity_deviation = 0.0;
  double spatial_invariance_deviation = 0.0;
  std::size_t phase_violations = 0;
  bool counts_ok = true;
  double uniformity_deviation = 0.0;
  bool stage_sets_equal = true;
  double stage_deviation = 0.0;
  bool oracle_ran = false;
  bool oracle_sets_equal = true;
  double oracle_deviation = 0.0;
  double norm_deviation = 0.0;

  std::map<Levels, double> oam_marginal;
  std::map<Levels, double> spatial_marginal;

  // Milliseconds spent per check family.
  double t_factor = 0, t_parity = 0, t_records = 0, t_stage = 0, t_oracle = 0;
};

LabelMetrics check_label(const SystemShape& shape, const GhzLabel& label, bool run_oracle,
                         const Limits& limits) {
  LabelMetrics m;
  m.summary.label = label;
  const int d = shape.dim();
  const int n = shape.photons();
  const RegisterState ghz = ghz_register(shape, label);
  const RegisterState aux = oam_auxiliary_register(shape);
  const RegisterState expected_oam = ghz_register(shape, GhzLabel{label.parity, 0});

  StateVector initial = hyper_initial(shape, label);
  StateVector after_parity = initial;
  {
    Stopwatch sw(m.t_factor);
    if (auto f = factor_across_registers(initial)) {
      m.initial_factored = true;
      m.initial_deviation = std::max({1.0 - fidelity(tensor(f->spatial, f->oam), initial),
                                      1.0 - fidelity(f->spatial, ghz), 1.0 - fidelity(f->oam, aux)});
    }
  }
  {
    Stopwatch sw(m.t_parity);
    after_parity = parity_stage(initial);
    if (auto f = factor_across_registers(after_parity)) {
      m.parity_factored = true;
      m.parity_deviation = std::max(1.0 - fidelity(tensor(f->spatial, f->oam), after_parity),
                                    1.0 - fidelity(f->oam, expected_oam));
      m.spatial_invariance_deviation = 1.0 - fidelity(f->spatial, ghz);
    }
    const StateVector after_phase = phase_stage(after_parity);
    m.norm_deviation = std::max({std::abs(initial.norm_squared() - 1.0),
                                 std::abs(after_parity.norm_squared() - 1.0),
                                 std::abs(after_phase.norm_squared() - 1.0)});
  }

  std::vector<WeightedRecord> records;
  {
    Stopwatch sw(m.t_records);
    records = run_exhaustive(shape, label, limits);
    for (const auto& r : records) {
      if (!(r.record.decoded == label)) ++m.summary.confusions;
      long long sum = label.phase;
      for (Level l : r.record.spatial.levels) sum += l;
      if (sum % d != 0) ++m.phase_violations;
      m.oam_marginal[r.record.oam.levels] += r.probability;
      m.spatial_marginal[r.record.spatial.levels] += r.probability;
    }
    m.summary.outcome_pairs = records.size();
    m.summary.oam_outcomes = m.oam_marginal.size();
    m.summary.spatial_outcomes = m.spatial_marginal.size();

    const double p_oam = 1.0 / d;
    const double p_spatial = std::pow(static_cast<double>(d), -(n - 1));
    m.counts_ok = m.oam_marginal.size() == static_cast<std::size_t>(d) &&
                  m.spatial_marginal.size() == static_cast<std::size_t>(std::llround(1.0 / p_spatial));
    for (const auto& e : m.oam_marginal) {
      m.uniformity_deviation = std::max(m.uniformity_deviation, std::abs(e.second - p_oam));
    }
    for (const auto& e : m.spatial_marginal) {
      m.uniformity_deviation = std::max(m.uniformity_deviation, std::abs(e.second - p_spatial));
    }
    // The OAM readouts must be exactly the parity-shifted support.
    std::set<Levels> expected_oam_set;
    for (auto& t : ghz_support(shape, label.parity)) expected_oam_set.insert(std::move(t));
    std::set<Levels> oam_set;
    for (const auto& e : m.oam_marginal) oam_set.insert(e.first);
    if (oam_set != expected_oam_set) m.counts_ok = false;
  }
  const JointDistribution exhaustive = joint_of(records);
  {
    Stopwatch sw(m.t_stage);
    for (StageOrder order : {StageOrder::oam_then_qft, StageOrder::qft_then_oam}) {
      auto [same, worst] = compare_joint(exhaustive, joint_distribution(after_parity, order));
      m.stage_sets_equal = m.stage_sets_equal && same;
      m.stage_deviation = std::max(m.stage_deviation, worst);
    }
  }
  if (run_oracle) {
    Stopwatch sw(m.t_oracle);
    const OracleResult oracle = brute_force_oracle(shape, label, limits.dense_amplitudes);
    m.oracle_ran = true;
    auto [same_joint, worst_joint] = compare_joint(exhaustive, oracle.joint);
    auto [same_oam, worst_oam] = compare_marginal(m.oam_marginal, oracle.oam);
    auto [same_spatial, worst_spatial] = compare_marginal(m.spatial_marginal, oracle.spatial);
    m.oracle_sets_equal = same_joint && same_oam && same_spatial;
    m.oracle_deviation = std::max({worst_joint, worst_oam, worst_spatial});
  }
  return m;
}

CheckResult gram_check(const SystemShape& shape, const std::vector<GhzLabel>& labels) {
  CheckResult check{"orthonormality", true, false, 0.0, kGramTolerance, 0.0, ""};
  const auto start = Clock::now();
  std::vector<RegisterState> states;
  states.reserve(labels.size());
  for (const auto& l : labels) states.push_back(ghz_register(shape, l));

  double worst = 0.0;
  auto entry = [&](std::size_t a, std::size_t b) {
    const Amplitude g = inner_product(states[a], states[b]);
    const Amplitude expected = a == b ? Amplitude{1.0, 0.0} : Amplitude{};
    worst = std::max(worst, std::abs(g - expected));
  };

  if (labels.size() <= kFullGramLimit) {
    for (std::size_t a = 0; a < states.size(); ++a) {
      for (std::size_t b = 0; b < states.size(); ++b) entry(a, b);
    }
    check.detail = std::to_string(labels.size()) + "x" + std::to_string(labels.size()) +
                   " Gram matrix";
  } else {
    // all_labels keeps each parity class contiguous (d phases each).
    const auto d = static_cast<std::size_t>(shape.dim());
    std::set<BasisIndex> seen;
    bool disjoint = true;
    for (std::size_t block = 0; block < states.size(); block += d) {
      for (std::size_t a = block; a < block + d; ++a) {
        for (std::size_t b = block; b < block + d; ++b) entry(a, b);
      }
      for (const auto& e : states[block].entries()) disjoint = seen.insert(e.first).second && disjoint;
    }
    if (!disjoint) check.passed = false;
    check.detail = "same-parity blocks plus support disjointness across " +
                   std::to_string(labels.size() / d) + " parity classes";
  }
  check.worst_deviation = worst;
  check.passed = check.passed && worst <= kGramTolerance;
  check.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return check;
}

void add_to_tables(ParityTable& parity, PhaseTable& phase, const GhzLabel& label,
                   const std::map<Levels, double>& oam_marginal,
                   const std::map<Levels, double>& spatial_marginal) {
  const int d = parity.shape.dim();
  const int n = parity.shape.photons();
  std::set<Levels> oam_set;
  for (const auto& [levels, p] : oam_marginal) {
    oam_set.insert(levels);
    parity.worst_probability_deviation =
        std::max(parity.worst_probability_deviation, std::abs(p - 1.0 / d));
  }
  std::set<Levels> spatial_set;
  const double p_spatial = std::pow(static_cast<double>(d), -(n - 1));
  for (const auto& [levels, p] : spatial_marginal) {
    spatial_set.insert(levels);
    phase.worst_probability_deviation =
        std::max(phase.worst_probability_deviation, std::abs(p - p_spatial));
  }
  auto [pit, pnew] = parity.rows.emplace(label.parity, oam_set);
  if (!pnew && pit->second != oam_set) parity.consistent_across_phase = false;
  auto [kit, knew] = phase.rows.emplace(label.phase, spatial_set);
  if (!knew && kit->second != spatial_set) phase.consistent_across_parity = false;
}

std::pair<ParityTable, PhaseTable> build_tables(const SystemShape& shape, const Limits& limits) {
  ParityTable parity{shape, {}, true, 0.0};
  PhaseTable phase{shape, {}, true, 0.0};
  for (const auto& label : all_labels(shape, limits.label_enumeration)) {
    std::map<Levels, double> oam_marginal;
    std::map<Levels, double> spatial_marginal;
    for (const auto& r : run_exhaustive(shape, label, limits)) {
      oam_marginal[r.record.oam.levels] += r.probability;
      spatial_marginal[r.record.spatial.levels] += r.probability;
    }
    add_to_tables(parity, phase, label, oam_marginal, spatial_marginal);
  }
  return {std::move(parity), std::move(phase)};
}

}  // namespace

ParityTable parity_table(const SystemShape& shape, const Limits& limits) {
  return build_tables(shape, limits).first;
}

PhaseTable phase_table(const SystemShape& shape, const Limits& limits) {
  return build_tables(shape, limits).second;
}

ParityTable reproduce_table1() { return parity_table(SystemShape(3, 3)); }
PhaseTable reproduce_table2() { return phase_table(SystemShape(3, 3)); }

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.skipped || c.passed; });
}

std::size_t VerificationReport::labels_distinguished() const {
  return static_cast<std::size_t>(std::count_if(
      labels.begin(), labels.end(), [](const LabelSummary& l) { return l.confusions == 0; }));
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

VerificationReport verify_shape(const SystemShape& shape, const VerifyOptions& options) {
  const std::vector<GhzLabel> labels = all_labels(shape, options.limits.label_enumeration);
  const bool dense_feasible = shape.total_size() <= options.limits.dense_amplitudes;

  std::vector<LabelMetrics> metrics(labels.size());
  parallel_for(labels.size(), options.jobs, [&](std::size_t i) {
    metrics[i] = check_label(shape, labels[i], dense_feasible, options.limits);
  });

  VerificationReport report{shape, {}, {}, ParityTable{shape, {}, true, 0.0},
                            PhaseTable{shape, {}, true, 0.0}, !dense_feasible};
  report.checks.push_back(gram_check(shape, labels));

  CheckResult initial{"initial_factorization", true, false, 0.0, kFidelityTolerance, 0.0,
                      "initial state splits into GHZ (x) auxiliary"};
  CheckResult parity{"parity_stage_factorization", true, false, 0.0, kFidelityTolerance, 0.0,
                     "post-path-control state splits with the shifted OAM GHZ factor"};
  CheckResult invariance{"spatial_invariance", true, false, 0.0, kFidelityTolerance, 0.0,
                         "spatial GHZ factor unchanged by path control"};
  CheckResult norms{"norm_preservation", true, false, 0.0, kNormTolerance, 0.0,
                    "norm after each stage"};
  CheckResult constraint{"phase_constraint", true, false, 0.0, 0.0, 0.0, ""};
  CheckResult completeness{"completeness", true, false, 0.0, 0.0, 0.0, ""};
  CheckResult uniformity{"outcome_uniformity", true, false, 0.0, kProbabilityTolerance, 0.0,
                         "d OAM readouts at 1/d, d^(n-1) spatial readouts at d^-(n-1)"};
  CheckResult stage{"stage_order_independence", true, false, 0.0, kProbabilityTolerance, 0.0,
                    "factorized, OAM-first and QFT-first joint distributions agree"};
  CheckResult oracle{"oracle_equivalence", true, !dense_feasible, 0.0, kOracleTolerance, 0.0,
                     dense_feasible ? "sparse pipeline vs dense brute-force oracle"
                                    : "skipped: d^(2n) exceeds the dense cap"};

  std::size_t violations = 0;
  std::size_t confusions = 0;
  std::size_t outcome_pairs = 0;
  for (const auto& m : metrics) {
    report.labels.push_back(m.summary);

    initial.passed = initial.passed && m.initial_factored;
    initial.worst_deviation = std::max(initial.worst_deviation, m.initial_deviation);
    initial.runtime_ms += m.t_factor;

    parity.passed = parity.passed && m.parity_factored;
    parity.worst_deviation = std::max(parity.worst_deviation, m.parity_deviation);
    parity.runtime_ms += m.t_parity;
    invariance.passed = invariance.passed && m.parity_factored;
    invariance.worst_deviation =
        std::max(invariance.worst_deviation, m.spatial_invariance_deviation);
    norms.worst_deviation = std::max(norms.worst_deviation, m.norm_deviation);

    violations += m.phase_violations;
    confusions += m.summary.confusions;
    outcome_pairs += m.summary.outcome_pairs;
    constraint.runtime_ms += m.t_records;
    completeness.runtime_ms += m.t_records;

    uniformity.passed = uniformity.passed && m.counts_ok;
    uniformity.worst_deviation = std::max(uniformity.worst_deviation, m.uniformity_deviation);
    uniformity.runtime_ms += m.t_records;

    stage.passed = stage.passed && m.stage_sets_equal;
    stage.worst_deviation = std::max(stage.worst_deviation, m.stage_deviation);
    stage.runtime_ms += m.t_stage;

    if (m.oracle_ran) {
      oracle.passed = oracle.passed && m.oracle_sets_equal;
      oracle.worst_deviation = std::max(oracle.worst_deviation, m.oracle_deviation);
      oracle.runtime_ms += m.t_oracle;
    }

    add_to_tables(report.parity, report.phase, m.summary.label, m.oam_marginal,
                  m.spatial_marginal);
  }

  for (CheckResult* c : {&initial, &parity, &invariance, &norms, &uniformity, &stage, &oracle}) {
    c->passed = c->passed && c->worst_deviation <= c->tolerance;
  }
  constraint.passed = violations == 0;
  constraint.worst_deviation = static_cast<double>(violations);
  constraint.detail = std::to_string(violations) + " violations over " +
                      std::to_string(outcome_pairs) + " possible readout pairs";
  completeness.passed = confusions == 0;
  completeness.worst_deviation = static_cast<double>(confusions);
  completeness.detail = std::to_string(report.labels_distinguished()) + "/" +
                        std::to_string(labels.size()) + " states distinguished, " +
                        std::to_string(confusions) + " confusions";

  for (auto& c : {initial, parity, invariance, norms, constraint, completeness, uniformity, stage,
                  oracle}) {
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace qghz
