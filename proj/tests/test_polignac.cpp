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

#include <doctest.h>

#include <sstream>

#include "gapsieve/error.hpp"
#include "gapsieve/polignac.hpp"

using namespace gapsieve;

namespace {

Rational q(long a, long b) { return Rational(a) / Rational(b); }

}  // namespace

TEST_CASE("hl_ratio") {
  CHECK(hl_ratio(2) == 1);
  CHECK(hl_ratio(6) == 2);
  CHECK(hl_ratio(30) == q(8, 3));
  CHECK(hl_ratio(22) == q(10, 9));
  CHECK(hl_ratio(14) == q(6, 5));
  CHECK_THROWS_AS(hl_ratio(7), InvalidArgument);
}

TEST_CASE("hl_ratio in 4-decimal rendering") {
  CHECK(to_decimal(hl_ratio(78), 4) == "2.1818");
  CHECK(to_decimal(hl_ratio(74), 4) == "1.0286");
  CHECK(to_decimal(hl_ratio(84), 4) == "2.4000");
  CHECK(to_decimal(hl_ratio(128), 4) == "1.0000");
}

TEST_CASE("partial_ratio") {
  CHECK(partial_ratio(74, 31) == 1);
  CHECK(partial_ratio(78, 31) == q(24, 11));
  CHECK(partial_ratio(222, 31) == 2);
  CHECK(partial_ratio(30, 3) == 2);
  for (std::uint64_t g = 2; g <= 20'000; g += 2) {
    const auto a = gap_asymptotics(g);
    CHECK(a.partial(a.qbar) == a.w_infinity);
  }
}

TEST_CASE("seeded_total") {
  CHECK(seeded_total(6) == 2);
  CHECK(seeded_total(10) == 4);
  CHECK(seeded_total(14) == 18);
  CHECK(seeded_total(2) == 1);
  CHECK_THROWS_AS(seeded_total(2 * 103), CapacityError);
}

TEST_CASE("seeded_total matches censuses at qbar#") {
  for (std::uint64_t g : {6, 10, 12, 14, 18, 20, 22, 24, 26, 30}) {
    const std::uint64_t qbar = radical_of_even(g).largest_factor();
    const GapCycle c = build_primorial_cycle(qbar);
    CAPTURE(g);
    CHECK(WideUint(driving_terms_for_gap(c, g).total()) == seeded_total(g));
  }
}

TEST_CASE("repetition weights") {
  const auto r66 = repetition_weight(6, 2);
  CHECK(r66.feasible);
  CHECK(r66.pk == 3);
  CHECK(r66.pk_next == 5);
  CHECK(*r66.w_infinity == 2);
  CHECK(*repetition_weight(12, 2).w_infinity == 2);
  CHECK(*repetition_weight(6, 3).w_infinity == 2);
  CHECK_FALSE(repetition_weight(6, 4).feasible);
  CHECK_FALSE(repetition_weight(6, 4).w_infinity.has_value());
  CHECK(repetition_weight(2, 1).feasible);
  for (std::size_t j1 = 2; j1 <= 20; ++j1) CHECK_FALSE(repetition_weight(2, j1).feasible);
  CHECK(repetition_weight(30, 5).feasible);
  CHECK_FALSE(repetition_weight(30, 6).feasible);
}

TEST_CASE("feasibility matches the divisibility rule") {
  for (std::uint64_t g = 2; g <= 10'000; g += 2) {
    for (std::size_t j1 = 1; j1 <= 20; ++j1) {
      if (repetition_weight(g, j1).feasible != feasible_by_divisibility(g, j1)) {
        FAIL("g=" << g << " j1=" << j1);
      }
    }
  }
}

TEST_CASE("single repetitions agree with hl_ratio") {
  for (std::uint64_t g = 2; g <= 2'000; g += 2) CHECK(*repetition_weight(g, 1).w_infinity == hl_ratio(g));
}

TEST_CASE("census_crosscheck") {
  const GapCycle g7 = build_primorial_cycle(7);
  const auto c6 = census_crosscheck(g7, 6);
  CHECK(c6.census_ratio == 2);
  CHECK(c6.equal);
  const GapCycle g13 = build_primorial_cycle(13);
  const auto c30 = census_crosscheck(g13, 30);
  CHECK(c30.census_ratio == q(8, 3));
  CHECK(c30.equal);
  CHECK(census_crosscheck(g13, 2).census_ratio == 1);
  for (std::uint64_t g = 2; g <= 64; g += 2) CHECK(census_crosscheck(g13, g).equal);
  CHECK_THROWS_AS(census_crosscheck(build_cycle(SquarefreeModulus::from_factors({2, 5})), 6),
                  InvalidArgument);
}

TEST_CASE("asymptotics CSV") {
  std::ostringstream os;
  write_asymptotics_csv(os, {74, 78}, 31);
  CHECK(os.str() ==
        "g,qbar,w_partial,w_infinity,feasible\n"
        "74,37,1.0000,1.0286,true\n"
        "78,13,2.1818,2.1818,true\n");
}
