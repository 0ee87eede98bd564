// Copyright 2026 The gapsieve Authors
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

#include "gapsieve/survival.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <sstream>
#include <numeric>

#include "gapsieve/error.hpp"

namespace gapsieve {

namespace {

constexpr std::uint64_t kMaxReportPrime = 23;

template <class Gaps>
std::map<std::uint64_t, std::uint64_t> histogram_of(const Gaps& gaps) {
  std::map<std::uint64_t, std::uint64_t> h;
  for (auto g : gaps) ++h[g];
  return h;
}

}  // namespace

Rational naive_estimate(const GapCycle& cycle, const Constellation& target) {
  const std::uint64_t pk = cycle.modulus.largest_factor();
  if (!cycle.modulus.is_primorial()) throw InvalidArgument("naive_estimate needs a primorial cycle");
  const Rational next(next_prime(pk));
  const std::uint64_t n = target.is_single() ? count_gap(cycle, target.sum())
                                             : count_constellation(cycle, target);
  return (next * next - next) / to_rational(cycle.modulus.value()) * Rational(n);
}

std::uint64_t actual_gap_count(std::uint64_t a, std::uint64_t b,
                               const std::vector<std::uint64_t>& pattern, std::uint64_t budget) {
  if (pattern.empty()) throw InvalidArgument("empty gap pattern");
  const bool degenerate = pattern.size() == 1 && pattern[0] == 1;
  if (!degenerate) (void)Constellation(pattern);
  if (b > budget) {
    throw CapacityError("sieving to " + std::to_string(b) + " exceeds the budget of " +
                        std::to_string(budget));
  }
  if (a > b) throw InvalidArgument("interval [a, b] is inverted");
  a = std::max<std::uint64_t>(a, 2);
  if (a > b) return 0;

  const std::size_t k = pattern.size();
  std::deque<std::uint64_t> recent;
  std::uint64_t count = 0;
  for_each_prime(a, b, [&](std::uint64_t p) {
    recent.push_back(p);
    if (recent.size() > k + 1) recent.pop_front();
    if (recent.size() < k + 1) return;
    for (std::size_t i = 0; i < k; ++i) {
      if (recent[i + 1] - recent[i] != pattern[i]) return;
    }
    ++count;
  });
  return count;
}

std::uint64_t actual_gap_count(std::uint64_t a, std::uint64_t b, const Constellation& target,
                               std::uint64_t budget) {
  return actual_gap_count(a, b, target.gaps(), budget);
}

std::vector<NaiveEstimateRow> error_report(std::uint64_t pmin, std::uint64_t pmax,
                                           const std::vector<Constellation>& targets,
                                           const ErrorReportOptions& options) {
  if (pmin > pmax) throw InvalidArgument("pmin must not exceed pmax");
  if (pmax > kMaxReportPrime) {
    throw CapacityError("error_report builds cycles in memory and is limited to p_k <= 23");
  }
  std::vector<NaiveEstimateRow> rows;
  if (targets.empty()) return rows;
  for (std::uint64_t pk = std::max<std::uint64_t>(pmin, 2); pk <= pmax; ++pk) {
    if (!is_prime(pk)) continue;
    const GapCycle cycle = build_primorial_cycle(pk, options.build);
    const std::uint64_t p_next = next_prime(pk);
    for (const auto& target : targets) {
      NaiveEstimateRow row;
      row.pk = pk;
      row.p_next = p_next;
      row.lo = p_next;
      row.hi = p_next * p_next;
      row.target = target;
      row.cycle_count = target.is_single() ? count_gap(cycle, target.sum())
                                           : count_constellation(cycle, target, options.census);
      row.estimate = naive_estimate(cycle, target);
      row.actual = actual_gap_count(row.lo, row.hi, target, options.sieve_budget);
      if (row.actual > 0) {
        row.rel_error = to_double((row.estimate - Rational(row.actual)) / Rational(row.actual));
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_error_csv(std::ostream& out, const std::vector<NaiveEstimateRow>& rows) {
  out << "p_k,p_next,lo,hi,target,cycle_count,estimate,actual,rel_error\n";
  for (const auto& r : rows) {
    out << r.pk << ',' << r.p_next << ',' << r.lo << ',' << r.hi << ',' << csv_target(r.target)
        << ',' << r.cycle_count << ',' << to_decimal(r.estimate, 6) << ',' << r.actual << ',';
    if (r.rel_error) {
      std::ostringstream e;
      e << std::fixed << std::setprecision(6) << *r.rel_error;
      out << e.str();
    }
    out << '\n';
  }
}

std::vector<std::uint64_t> AttritionTrace::survivors() const {
  std::vector<std::uint64_t> out{1};
  std::uint64_t v = 1;
  for (std::size_t i = 0; i + 1 < final_gaps.size(); ++i) {
    v += final_gaps[i];
    out.push_back(v);
  }
  return out;
}

AttritionTrace attrition(const GapCycle& cycle) {
  if (!cycle.modulus.is_primorial()) throw InvalidArgument("attrition needs a primorial cycle");
  const std::uint64_t n = cycle.modulus.value_u64();
  const std::uint64_t pk = cycle.modulus.largest_factor();

  AttritionTrace trace;
  trace.base = cycle.modulus;
  for (std::uint64_t q = next_prime(pk); q * q < n; q = next_prime(q)) trace.P = q;
  trace.initial = histogram_of(cycle.gaps);
  for (const auto& [g, count] : trace.initial) trace.first_seen[g] = 0;

  std::vector<std::uint32_t> gaps(cycle.gaps.begin(), cycle.gaps.end());
  std::vector<std::uint32_t> next;
  for (std::uint64_t q = next_prime(pk); trace.P != 0 && q <= trace.P; q = next_prime(q)) {
    next.clear();
    next.reserve(gaps.size());
    std::uint64_t v = 1;
    std::uint64_t residue = 1;
    std::uint64_t pending = 0;
    AttritionStep step;
    step.prime = q;
    for (std::uint32_t g : gaps) {
      v += g;
      residue = (residue + g) % q;
      pending += g;
      if (residue == 0 && v != q && v != n + 1) {
        ++step.closures;
        continue;
      }
      next.push_back(static_cast<std::uint32_t>(pending));
      pending = 0;
    }
    gaps.swap(next);
    const std::uint64_t sum = std::accumulate(gaps.begin(), gaps.end(), std::uint64_t{0});
    if (sum != n) throw Error("attrition lost conservation at q = " + std::to_string(q));
    step.histogram = histogram_of(gaps);
    for (const auto& [g, count] : step.histogram) trace.first_seen.try_emplace(g, q);
    trace.steps.push_back(std::move(step));
  }
  trace.final_gaps = std::move(gaps);
  return trace;
}

void write_attrition_csv(std::ostream& out, const AttritionTrace& trace) {
  out << "prime,gap,count,normalized\n";
  auto emit = [&](std::uint64_t prime, const std::map<std::uint64_t, std::uint64_t>& h) {
    const auto twins = h.find(2);
    for (const auto& [g, count] : h) {
      out << prime << ',' << g << ',' << count << ',';
      if (twins != h.end() && twins->second > 0) {
        out << to_decimal(Rational(count) / Rational(twins->second), 6);
      }
      out << '\n';
    }
  };
  emit(trace.base.largest_factor(), trace.initial);
  for (const auto& step : trace.steps) emit(step.prime, step.histogram);
}

}  // namespace gapsieve
