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

#include "gapsieve/polignac.hpp"

#include "gapsieve/error.hpp"

namespace gapsieve {

namespace {

void require_even(std::uint64_t g) {
  if (g < 2 || g % 2 != 0) {
    throw InvalidArgument("expected an even gap >= 2, got " + std::to_string(g));
  }
}

}  // namespace

Rational partial_ratio(std::uint64_t g, std::uint64_t p) {
  require_even(g);
  Rational r = 1;
  for (std::uint64_t q : distinct_prime_factors(g)) {
    if (q > 2 && q <= p) r *= Rational(q - 1, q - 2);
  }
  return r;
}

Rational hl_ratio(std::uint64_t g) {
  return partial_ratio(g, ~std::uint64_t{0});
}

WideUint seeded_total(std::uint64_t g) {
  const SquarefreeModulus Q = radical_of_even(g);
  const std::uint64_t qbar = Q.largest_factor();
  if (qbar > 101) throw CapacityError("seeded_total limited to largest factor <= 101");
  WideUint total = euler_phi(Q);
  try {
    for (std::uint64_t p = 2; p < qbar; p = next_prime(p)) {
      if (!Q.divisible_by(p)) total *= (p - 2);
    }
  } catch (const std::overflow_error&) {
    throw CapacityError("seeded total for g = " + std::to_string(g) + " exceeds 128 bits");
  }
  return total;
}

GapAsymptotics gap_asymptotics(std::uint64_t g) {
  GapAsymptotics a;
  a.g = g;
  a.Q = radical_of_even(g);
  a.qbar = a.Q.largest_factor();
  a.w_infinity = hl_ratio(g);
  return a;
}

bool feasible_by_divisibility(std::uint64_t g, std::size_t j1) {
  for (std::uint64_t p = 2; p <= j1 + 1; p = next_prime(p)) {
    if (g % p != 0) return false;
  }
  return true;
}

RepetitionSpec repetition_weight(std::uint64_t g, std::size_t j1) {
  require_even(g);
  if (j1 < 1) throw InvalidArgument("repetition length must be at least 1");
  RepetitionSpec spec;
  spec.g = g;
  spec.j1 = j1;
  std::uint64_t p = 2;
  while (g % p == 0) {
    spec.pk = p;
    p = next_prime(p);
    // g % (p_k#) == 0 for all primes so far; stop at the first prime not dividing g.
  }
  spec.pk_next = p;
  spec.feasible = j1 + 1 < spec.pk_next;
  if (spec.feasible) {
    const SquarefreeModulus Q = radical_of_even(g);
    spec.w_infinity = to_rational(phi_i(1, Q)) / to_rational(phi_i(j1 + 1, Q));
  }
  return spec;
}

Crosscheck census_crosscheck(const GapCycle& cycle, std::uint64_t g, const CensusOptions& options) {
  require_even(g);
  if (!cycle.modulus.is_primorial()) throw InvalidArgument("census_crosscheck needs a primorial cycle");
  Crosscheck c;
  c.g = g;
  c.p = cycle.modulus.largest_factor();
  const std::uint64_t twins = count_gap(cycle, 2);
  if (twins == 0) throw InvalidArgument("cycle has no gap 2 to normalize by");
  const Census census = driving_terms_for_gap(cycle, g, options);
  c.census_ratio = Rational(census.total()) / Rational(twins);
  c.predicted = partial_ratio(g, c.p);
  c.equal = c.census_ratio == c.predicted;
  return c;
}

void write_asymptotics_csv(std::ostream& out, const std::vector<std::uint64_t>& gaps,
                           std::optional<std::uint64_t> at_prime) {
  out << "g,qbar,w_partial,w_infinity,feasible\n";
  for (std::uint64_t g : gaps) {
    const GapAsymptotics a = gap_asymptotics(g);
    const Rational partial = at_prime ? a.partial(*at_prime) : a.w_infinity;
    const bool feasible = repetition_weight(g, 1).feasible;
    out << g << ',' << a.qbar << ',' << to_decimal(partial, 4) << ','
        << to_decimal(a.w_infinity, 4) << ',' << (feasible ? "true" : "false") << '\n';
  }
}

}  // namespace gapsieve
