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
#include <optional>
#include <ostream>
#include <vector>

#include "gapsieve/census.hpp"
#include "gapsieve/primal.hpp"
#include "gapsieve/rational.hpp"

namespace gapsieve {

// prod over odd primes q | g of (q-1)/(q-2).
Rational hl_ratio(std::uint64_t g);

// The same product restricted to factors q <= p.
Rational partial_ratio(std::uint64_t g, std::uint64_t p);

// Total driving terms for g in G(qbar#): phi(Q) * prod_{p < qbar, p !| Q} (p-2).
WideUint seeded_total(std::uint64_t g);

struct GapAsymptotics {
  std::uint64_t g = 0;
  SquarefreeModulus Q;
  std::uint64_t qbar = 0;
  Rational w_infinity;

  Rational partial(std::uint64_t p) const { return partial_ratio(g, p); }
};

GapAsymptotics gap_asymptotics(std::uint64_t g);

struct RepetitionSpec {
  std::uint64_t g = 0;
  std::size_t j1 = 1;
  // Largest prime p with p# | g, and the prime after it.
  std::uint64_t pk = 0;
  std::uint64_t pk_next = 0;
  bool feasible = false;
  // Present only when feasible.
  std::optional<Rational> w_infinity;
};

// Weight of the repetition g,g,...,g (j1 copies): phi_1(Q)/phi_{j1+1}(Q).
RepetitionSpec repetition_weight(std::uint64_t g, std::size_t j1);

// Every prime p <= j1 + 1 divides g.
bool feasible_by_divisibility(std::uint64_t g, std::size_t j1);

struct Crosscheck {
  std::uint64_t g = 0;
  std::uint64_t p = 0;
  Rational census_ratio;
  Rational predicted;
  bool equal = false;
};

// sum_j n_{g,j}(p#) / n_{2,1}(p#) on a primorial cycle vs partial_ratio(g, p).
Crosscheck census_crosscheck(const GapCycle& cycle, std::uint64_t g,
                             const CensusOptions& options = {});

// g,qbar,w_partial,w_infinity,feasible with 4-decimal ratios.
void write_asymptotics_csv(std::ostream& out, const std::vector<std::uint64_t>& gaps,
                           std::optional<std::uint64_t> at_prime);

}  // namespace gapsieve
