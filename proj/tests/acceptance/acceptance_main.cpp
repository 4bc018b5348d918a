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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qghz/dense_oracle.hpp"
#include "qghz/gates.hpp"
#include "qghz/ghz_catalog.hpp"
#include "qghz/protocol.hpp"
#include "qghz/qudit_state.hpp"
#include "qghz/verify.hpp"
#include "test_oracles.hpp"

namespace {

using namespace qghz;

struct Verdict {
  bool passed = true;
  std::string detail;
};

const std::vector<std::pair<int, int>> kGrid = {{2, 2}, {2, 3}, {2, 5}, {3, 2},
                                                {3, 3}, {3, 4}, {4, 3}, {5, 3}};

// Expected three-qutrit readouts, written with OAM levels a,b,c = 0,1,2.
Levels letters(const std::string& s) {
  Levels out;
  for (char c : s) out.push_back(c - 'a');
  return out;
}

Levels digits(const std::string& s) {
  Levels out;
  for (char c : s) out.push_back(c - '0');
  return out;
}

const std::map<Levels, std::vector<std::string>> kOamRows = {
    {{0, 0}, {"aaa", "bbb", "ccc"}}, {{0, 1}, {"aab", "bbc", "cca"}},
    {{0, 2}, {"aac", "bba", "ccb"}}, {{1, 0}, {"aba", "bcb", "cac"}},
    {{1, 1}, {"abb", "bcc", "caa"}}, {{1, 2}, {"abc", "bca", "cab"}},
    {{2, 0}, {"aca", "bab", "cbc"}}, {{2, 1}, {"acb", "bac", "cba"}},
    {{2, 2}, {"acc", "baa", "cbb"}},
};

const std::map<int, std::vector<std::string>> kSpatialRows = {
    {0, {"000", "012", "021", "102", "111", "120", "201", "210", "222"}},
    {1, {"002", "011", "020", "101", "110", "122", "200", "212", "221"}},
    {2, {"001", "010", "022", "100", "112", "121", "202", "211", "220"}},
};

char buf[512];

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const ParityTable table = reproduce_table1();
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  bool sets_match = table.rows.size() == kOamRows.size();
  for (const auto& [x, row] : kOamRows) {
    std::set<Levels> expected;
    for (const auto& s : row) expected.insert(letters(s));
    auto it = table.rows.find(x);
    sets_match = sets_match && it != table.rows.end() && it->second == expected;
  }
  const double tol = 1e-9;
  const bool ok = sets_match && table.consistent_across_phase &&
                  table.worst_probability_deviation <= tol && ms < 1000.0;
  return {ok, fmt("9 parity rows x 3 phases, sets %s, worst |p-1/3|=%.3g (tol %.0e), %.1f ms (limit 1000)",
                  sets_match ? "exact" : "MISMATCH", table.worst_probability_deviation, tol, ms)};
}

Verdict criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const PhaseTable table = reproduce_table2();
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  bool sets_match = table.rows.size() == kSpatialRows.size();
  for (const auto& [k, row] : kSpatialRows) {
    std::set<Levels> expected;
    for (const auto& s : row) expected.insert(digits(s));
    auto it = table.rows.find(k);
    sets_match = sets_match && it != table.rows.end() && it->second == expected;
  }
  const double tol = 1e-9;
  const bool ok = sets_match && table.consistent_across_parity &&
                  table.worst_probability_deviation <= tol && ms < 1000.0;
  return {ok, fmt("3 phase rows x 9 parities, sets %s, worst |p-1/9|=%.3g (tol %.0e), %.1f ms (limit 1000)",
                  sets_match ? "exact" : "MISMATCH", table.worst_probability_deviation, tol, ms)};
}

Verdict criterion3() {
  const SystemShape shape(3, 3);
  const double tol = 1e-12;
  double worst = 0.0;
  int holds = 0;
  int total = 0;
  for (const auto& [x, row] : kOamRows) {
    SparseEntries oam;
    for (const auto& s : row) oam.emplace_back(shape.register_index(letters(s)), 1.0 / std::sqrt(3.0));
    const RegisterState expected_oam(shape, oam);
    for (int k = 0; k < 3; ++k) {
      ++total;
      SparseEntries spatial;
      for (const auto& [t, a] : testing::expand_ghz(3, x, k)) spatial.emplace_back(shape.register_index(t), a);
      const RegisterState expected_spatial(shape, spatial);
      const auto factors = factor_across_registers(parity_stage(hyper_initial(shape, GhzLabel{x, k})));
      if (!factors) {
        worst = std::max(worst, 1.0);
        continue;
      }
      const double d_oam = 1.0 - fidelity(factors->oam, expected_oam);
      const double d_spatial = 1.0 - fidelity(factors->spatial, expected_spatial);
      worst = std::max({worst, d_oam, d_spatial});
      if (d_oam <= tol && d_spatial <= tol) ++holds;
    }
  }
  return {holds == total, fmt("%d/%d evolutions factor as listed, worst 1-F=%.3g (tol %.0e)", holds, total,
                              worst, tol)};
}

Verdict criterion4() {
  const SystemShape shape(3, 3);
  const double tol = 1e-12;
  double worst = 0.0;
  bool supports_exact = true;
  for (const auto& [k, row] : kSpatialRows) {
    std::set<BasisIndex> listed;
    for (const auto& s : row) listed.insert(shape.compose(shape.register_index(digits(s)), 0));
    const auto s = convert_representation(
        apply_qft_spatial_all(ghz_spatial(shape, GhzLabel{{0, 0}, k})), Representation::dense);
    const auto amps = s.dense_amplitudes();
    std::size_t above = 0;
    for (BasisIndex i = 0; i < amps.size(); ++i) {
      const double mag = std::abs(amps[i]);
      if (listed.count(i)) {
        worst = std::max(worst, std::abs(mag - 1.0 / 3.0));
      } else {
        worst = std::max(worst, mag);
      }
      if (mag >= tol) ++above;
    }
    supports_exact = supports_exact && above == 9;
  }
  const bool ok = supports_exact && worst <= tol;
  return {ok, fmt("3 states, 9 listed tuples each, supports %s, worst deviation %.3g (tol %.0e)",
                  supports_exact ? "exact" : "MISMATCH", worst, tol)};
}

Verdict criterion5() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t labels = 0;
  std::size_t distinguished = 0;
  std::size_t confusions = 0;
  std::size_t pairs = 0;
  for (auto [d, n] : kGrid) {
    const SystemShape shape(d, n);
    for (const auto& label : all_labels(shape)) {
      ++labels;
      std::size_t wrong = 0;
      for (const auto& r : run_exhaustive(shape, label)) {
        ++pairs;
        if (!(r.record.decoded == label)) ++wrong;
      }
      confusions += wrong;
      if (wrong == 0) ++distinguished;
    }
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = confusions == 0 && distinguished == labels && s < 60.0;
  return {ok, fmt("%zu/%zu labels over 8 shapes, %zu outcome pairs, %zu confusions, %.2f s (limit 60)",
                  distinguished, labels, pairs, confusions, s)};
}

Verdict criterion6() {
  const double tol = 1e-12;
  double worst = 0.0;
  std::string sizes;
  for (auto [d, n] : {std::pair{3, 3}, std::pair{5, 3}}) {
    const SystemShape shape(d, n);
    std::vector<RegisterState> states;
    for (const auto& label : all_labels(shape)) states.push_back(ghz_register(shape, label));
    for (std::size_t a = 0; a < states.size(); ++a) {
      for (std::size_t b = 0; b < states.size(); ++b) {
        const Amplitude g = inner_product(states[a], states[b]);
        worst = std::max(worst, std::abs(g - Amplitude(a == b ? 1.0 : 0.0)));
      }
    }
    sizes += (sizes.empty() ? "" : ", ") + std::to_string(states.size()) + "x" + std::to_string(states.size());
  }
  return {worst <= tol, fmt("Gram %s, worst |G-I|=%.3g (tol %.0e)", sizes.c_str(), worst, tol)};
}

Verdict criterion7() {
  std::size_t checked = 0;
  std::size_t violations = 0;
  for (auto [d, n] : kGrid) {
    const SystemShape shape(d, n);
    for (const auto& label : all_labels(shape)) {
      const auto dist = measure_register(phase_stage(parity_stage(hyper_initial(shape, label))),
                                         Register::spatial);
      for (const auto& [y, p] : dist.probabilities()) {
        if (p <= kSupportThreshold) continue;
        ++checked;
        long long sum = label.phase;
        for (Level l : y) sum += l;
        if (sum % d != 0) ++violations;
      }
    }
  }
  return {violations == 0, fmt("%zu spatial outcomes over 8 shapes, %zu violations", checked, violations)};
}

Verdict criterion8() {
  const double tol = 1e-10;
  double worst = 0.0;
  std::size_t set_mismatches = 0;
  std::size_t compared = 0;
  std::size_t shapes = 0;
  for (auto [d, n] : kGrid) {
    const SystemShape shape(d, n);
    if (shape.total_size() > (BasisIndex{1} << 26)) continue;
    ++shapes;
    for (const auto& label : all_labels(shape)) {
      const OracleResult oracle = brute_force_oracle(shape, label);
      std::map<std::pair<Levels, Levels>, double> pipeline;
      for (const auto& r : run_exhaustive(shape, label)) {
        pipeline[{r.record.oam.levels, r.record.spatial.levels}] += r.probability;
      }
      ++compared;
      if (pipeline.size() != oracle.joint.size()) ++set_mismatches;
      for (const auto& [key, p] : oracle.joint) {
        auto it = pipeline.find(key);
        if (it == pipeline.end()) {
          ++set_mismatches;
          continue;
        }
        worst = std::max(worst, std::abs(it->second - p));
      }
    }
  }
  const bool ok = set_mismatches == 0 && worst <= tol;
  return {ok, fmt("%zu shapes, %zu labels, %zu set mismatches, worst |dp|=%.3g (tol %.0e)", shapes, compared,
                  set_mismatches, worst, tol)};
}

Verdict criterion9() {
  const auto t0 = std::chrono::steady_clock::now();
  const SystemShape shape(3, 3);
  constexpr std::size_t kShots = 10000;
  constexpr std::uint64_t kSeed = 20240613;
  std::size_t correct = 0;
  std::size_t total = 0;
  double worst_sigmas = 0.0;
  std::size_t unexpected = 0;
  std::uint64_t index = 0;
  for (const auto& label : all_labels(shape)) {
    std::map<Levels, double> oam_exact;
    std::map<Levels, double> spatial_exact;
    for (const auto& r : run_exhaustive(shape, label)) {
      oam_exact[r.record.oam.levels] += r.probability;
      spatial_exact[r.record.spatial.levels] += r.probability;
    }
    std::map<Levels, std::size_t> oam_counts;
    std::map<Levels, std::size_t> spatial_counts;
    for (const auto& r : run_sampled(shape, label, kShots, kSeed + index++)) {
      ++total;
      if (r.decoded == label) ++correct;
      ++oam_counts[r.oam.levels];
      ++spatial_counts[r.spatial.levels];
    }
    auto score = [&](const std::map<Levels, double>& exact, const std::map<Levels, std::size_t>& counts) {
      for (const auto& [o, c] : counts) {
        if (!exact.count(o)) ++unexpected;
      }
      for (const auto& [o, p] : exact) {
        const auto it = counts.find(o);
        const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
        const double sigma = std::sqrt(kShots * p * (1.0 - p));
        worst_sigmas = std::max(worst_sigmas, std::abs(observed - kShots * p) / sigma);
      }
    };
    score(oam_exact, oam_counts);
    score(spatial_exact, spatial_counts);
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = correct == total && unexpected == 0 && worst_sigmas <= 5.0 && s < 10.0;
  return {ok, fmt("%zu/%zu shots decoded, %zu off-support outcomes, worst deviation %.2f sigma (limit 5), "
                  "%.2f s (limit 10)",
                  correct, total, unexpected, worst_sigmas, s)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"OAM readout table", criterion1},
      {"spatial readout table", criterion2},
      {"path-control evolutions", criterion3},
      {"post-QFT amplitudes", criterion4},
      {"complete discrimination", criterion5},
      {"orthonormality", criterion6},
      {"phase sum constraint", criterion7},
      {"dense oracle equivalence", criterion8},
      {"sampling soundness", criterion9},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu (%s): %s\n", result.passed ? "PASS" : "FAIL", i + 1, criteria[i].first,
                result.detail.c_str());
    std::fflush(stdout);
    if (!result.passed) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
