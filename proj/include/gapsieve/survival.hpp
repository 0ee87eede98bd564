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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "gapsieve/census.hpp"
#include "gapsieve/cycle.hpp"
#include "gapsieve/rational.hpp"

namespace gapsieve {

// (p_{k+1}^2 - p_{k+1}) / p_k# * n_s(p_k#) for a cycle G(p_k#).
Rational naive_estimate(const GapCycle& cycle, const Constellation& target);

inline constexpr std::uint64_t kDefaultSieveBudget = 10'000'000'000ULL;

// Occurrences of `pattern` as consecutive prime gaps with every prime of the
// occurrence inside [a, b]. The odd pattern {1} (the gap 2 -> 3) is the only
// odd one accepted.
std::uint64_t actual_gap_count(std::uint64_t a, std::uint64_t b,
                               const std::vector<std::uint64_t>& pattern,
                               std::uint64_t budget = kDefaultSieveBudget);

std::uint64_t actual_gap_count(std::uint64_t a, std::uint64_t b, const Constellation& target,
                               std::uint64_t budget = kDefaultSieveBudget);

struct NaiveEstimateRow {
  std::uint64_t pk = 0;
  std::uint64_t p_next = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  Constellation target = Constellation::single(2);
  std::uint64_t cycle_count = 0;
  Rational estimate;
  std::uint64_t actual = 0;
  // (estimate - actual) / actual; empty when actual is 0.
  std::optional<double> rel_error;
};

struct ErrorReportOptions {
  std::uint64_t sieve_budget = kDefaultSieveBudget;
  BuildOptions build{};
  CensusOptions census{};
};

std::vector<NaiveEstimateRow> error_report(std::uint64_t pmin, std::uint64_t pmax,
                                           const std::vector<Constellation>& targets,
                                           const ErrorReportOptions& options = {});

void write_error_csv(std::ostream& out, const std::vector<NaiveEstimateRow>& rows);

struct AttritionStep {
  std::uint64_t prime = 0;
  std::uint64_t closures = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;
};

struct AttritionTrace {
  SquarefreeModulus base;
  std::uint64_t P = 0;
  std::map<std::uint64_t, std::uint64_t> initial;
  std::vector<AttritionStep> steps;
  std::vector<std::uint32_t> final_gaps;
  // Sieving prime at which each gap value first appears; 0 if present at the start.
  std::map<std::uint64_t, std::uint64_t> first_seen;

  std::vector<std::uint64_t> survivors() const;
};

/// Continue sieving inside one fixed cycle G(p_k#) by the primes q in (p_k, P],
/// P the largest prime with P^2 < p_k#. Every candidate divisible by q is
/// closed except q itself; the endpoint p_k# + 1 stands for generator 1 and
/// is never closed. Survivors are 1 and the primes in (p_k, p_k#].
AttritionTrace attrition(const GapCycle& cycle);

// prime,gap,count,normalized with the starting histogram under prime p_k.
void write_attrition_csv(std::ostream& out, const AttritionTrace& trace);

}  // namespace gapsieve
