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

// Acceptance run: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "gapsieve/census.hpp"
#include "gapsieve/cycle.hpp"
#include "gapsieve/dynsys.hpp"
#include "gapsieve/polignac.hpp"
#include "gapsieve/survival.hpp"
#include "oracles.hpp"
#include "reference_tables.hpp"

using namespace gapsieve;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::uint64_t> widen(const std::vector<Gap>& g) { return {g.begin(), g.end()}; }

std::string cli_out(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  run_cli(args, out, err);
  return out.str();
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  o.expect(cli_out({"build", "--prime", "3"}) == "42\n", "G(3#)");
  o.expect(cli_out({"build", "--prime", "5"}) == "64242462\n", "G(5#)");
  const GapCycle g7 = build_primorial_cycle(7);
  std::uint64_t sum = 0;
  for (Gap g : g7.gaps) sum += g;
  o.expect(g7.size() == 48 && sum == 210, "G(7#) size/sum");
  o.expect(cli_out({"build", "--prime", "7"}) == reference::g7_display() + "\n", "G(7#) display");
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    o.expect(widen(build_primorial_cycle(p).gaps) == oracle::gcd_cycle(primorial(p).value_u64()),
             "oracle " + std::to_string(p) + "#");
  }
  const auto primes = oracle::trial_primes(2, 1000);
  std::mt19937_64 rng(1);
  int built = 0;
  while (built < 50) {
    std::vector<std::uint64_t> f;
    std::uint64_t n = 1;
    for (int k = 0; k < 8; ++k) {
      const auto q = primes[rng() % primes.size()];
      if (n * q <= 1'000'000 && std::find(f.begin(), f.end(), q) == f.end()) {
        f.push_back(q);
        n *= q;
      }
    }
    if (f.empty()) continue;
    o.expect(widen(build_cycle(SquarefreeModulus::from_factors(f)).gaps) == oracle::gcd_cycle(n),
             "oracle N=" + std::to_string(n));
    ++built;
  }
  // The budget covers construction; the gcd oracle runs are extra.
  const auto t1 = Clock::now();
  for (std::uint64_t p : {3, 5, 7, 11, 13}) build_primorial_cycle(p);
  const double build_time = seconds_since(t1);
  o.expect(build_time < 1.0, "build time " + std::to_string(build_time));
  std::ostringstream d;
  d << "3#,5#,7# exact; oracle equal on 6 primorials + 50 random N; build " << build_time
    << " s (total " << seconds_since(t0) << " s)";
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const GapCycle g13 = build_primorial_cycle(13);
  int cells = 0;
  for (const auto& row : reference::table2()) {
    const Census c = driving_terms_for_gap(g13, row.g);
    for (std::size_t j = 1; j <= std::max<std::size_t>(9, c.J()); ++j) {
      const std::uint64_t expected = j <= row.counts.size() ? row.counts[j - 1] : 0;
      o.expect(c.at(j) == expected, "g=" + std::to_string(row.g) + " j=" + std::to_string(j));
      ++cells;
    }
    o.expect(to_string(asymptotic_ratio(from_census(c))) == row.w_infinity,
             "w_inf g=" + std::to_string(row.g));
    ++cells;
  }
  const double t = seconds_since(t0);
  o.expect(t < 5.0, "runtime " + std::to_string(t));
  if (o.pass) o.detail = std::to_string(cells) + " cells exact in " + std::to_string(t) + " s";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::map<std::uint64_t, GapCycle> cycles;
  for (std::uint64_t p : {5, 7, 11, 13}) cycles.emplace(p, build_primorial_cycle(p));
  for (std::uint64_t g = 2; g <= 12; g += 2) {
    PopulationVector model = from_census(driving_terms_for_gap(cycles.at(5), g));
    for (std::uint64_t p : {7, 11, 13}) {
      model = step(model, p);
      const Census truth = driving_terms_for_gap(cycles.at(p), g);
      for (std::size_t j = 1; j <= std::max(truth.J(), model.J()); ++j) {
        const Rational m = j <= model.J() ? model.entries(static_cast<Eigen::Index>(j - 1)) : Rational(0);
        o.expect(m == Rational(truth.at(j)),
                 "g=" + std::to_string(g) + " p=" + std::to_string(p) + " j=" + std::to_string(j));
      }
    }
  }
  o.expect(to_string(iterate(make_population(5, 1, {2, 4}, Basis::raw), 11).entries(0)) == "142",
           "n_6,1(11#)");
  const auto v8 = iterate(make_population(5, 1, {0, 2, 1}, Basis::raw), 11);
  o.expect(v8.entries(0) == 28 && v8.entries(1) == 86 && v8.entries(2) == 21, "n_8(11#)");
  int identities = 0;
  for (std::uint64_t p = 7; p <= 101; p = next_prime(p)) {
    for (Eigen::Index n = 2; n <= 12; ++n) {
      const auto L = pascal_upper<Rational>(n);
      const auto R = alternating_pascal_upper<Rational>(n);
      const RationalMatrix M = transfer_matrix<Rational>(p, 1, static_cast<std::size_t>(n));
      o.expect(L * R == RationalMatrix::Identity(n, n), "LR=I n=" + std::to_string(n));
      o.expect(R * RationalMatrix(M.diagonal().asDiagonal()) * L == M,
               "M=RΛL p=" + std::to_string(p) + " n=" + std::to_string(n));
      identities += 2;
    }
  }
  if (o.pass) {
    o.detail = "gaps 2..12 exact over 5#->7#->11#->13#; " + std::to_string(identities) +
               " exact matrix identities";
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (const auto& row : reference::table2()) {
    o.expect(to_string(hl_ratio(row.g)) == row.w_infinity, "table2 g=" + std::to_string(row.g));
  }
  // Rounded to the digits shown in the published column.
  const std::vector<std::pair<std::uint64_t, std::string>> table4 = {
      {74, "1.02857"}, {76, "1.0588"}, {78, "2.1818"}, {80, "1.3333"}, {82, "1.0256"},
      {84, "2.4"},     {86, "1.0244"}, {88, "1.1111"}, {90, "2.6667"}, {92, "1.0476"},
      {94, "1.0222"},  {96, "2"},      {98, "1.2"},    {100, "1.3333"}, {102, "2.133"},
      {104, "1.0909"}, {106, "1.0196"}, {108, "2"},    {110, "1.4815"}, {112, "1.2"},
      {114, "2.1176"}, {116, "1.0370"}, {118, "1.0175"}, {120, "2.6667"}, {122, "1.0169"},
      {124, "1.0345"}, {126, "2.4"},    {128, "1"},     {130, "1.4545"}, {132, "2.2222"}};
  for (const auto& [g, shown] : table4) {
    const auto dot = shown.find('.');
    const int digits = dot == std::string::npos ? 0 : static_cast<int>(shown.size() - dot - 1);
    o.expect(to_decimal(hl_ratio(g), digits) == shown, "table4 g=" + std::to_string(g));
  }
  o.expect(to_decimal(hl_ratio(78), 4) == "2.1818", "78 -> 2.1818");
  for (const auto& row : reference::table5()) {
    const Constellation s = Constellation::parse(row.s);
    const Census c = driving_terms_for_constellation(build_primorial_cycle(row.p0), s);
    o.expect(to_string(asymptotic_ratio(from_census(c))) == row.w_infinity, "table5 " + row.s);
  }
  o.expect(*repetition_weight(6, 2).w_infinity == 2, "66 repetition");
  o.expect(*repetition_weight(12, 2).w_infinity == 2, "12,12 repetition");
  o.expect(*repetition_weight(6, 3).w_infinity == 2, "666 repetition");
  if (o.pass) o.detail = "16 table2 ratios, 30 table4 values, 9 constellation weights";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto t0 = Clock::now();
  for (std::uint64_t pk : {1'000ULL, 100'000ULL, 10'000'000ULL}) {
    const auto a = eigenvalue_products(13, pk, 9);
    for (std::size_t j = 3; j <= 9; ++j) {
      o.expect(a[j - 2] < a[j - 3], "decreasing pk=" + std::to_string(pk));
      o.expect(a[j - 2] < std::pow(a[0], static_cast<long double>(j - 1)),
               "below a2^(j-1) pk=" + std::to_string(pk));
    }
  }
  const auto primes = oracle::trial_primes(2, 1'000'000);
  double worst = 0;
  for (std::uint64_t pk : {10'007ULL, 1'000'000ULL}) {
    const auto a = eigenvalue_products(13, pk, 5);
    for (std::uint64_t j = 2; j <= 5; ++j) {
      const double exact = to_double(oracle::exact_ajk(13, pk, j, primes));
      worst = std::max(worst, std::fabs(static_cast<double>(a[j - 2]) - exact) / exact);
    }
  }
  o.expect(worst <= 1e-10, "float vs exact relative error " + std::to_string(worst));
  if (o.pass) {
    std::ostringstream d;
    d << "monotone to 1e7; worst relative error vs exact " << worst << " ("
      << seconds_since(t0) << " s); 1e12 table is --long only";
    o.detail = d.str();
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto t0 = Clock::now();
  const GapCycle g13 = build_primorial_cycle(13);
  const auto v30 = from_census(driving_terms_for_gap(g13, 30), Basis::normalized);
  const auto v6 = from_census(driving_terms_for_gap(g13, 6), Basis::normalized);
  const auto root = crossover(v30, v6);
  const double t = seconds_since(t0);
  o.expect(root.has_value(), "no root");
  if (root) o.expect(std::fabs(root->a2 - 0.06275) <= 5e-4, "a2* = " + std::to_string(root->a2));
  o.expect(t < 1.0, "runtime " + std::to_string(t));
  if (o.pass) {
    std::ostringstream d;
    d << "a2* = " << root->a2 << " (" << t << " s)";
    o.detail = d.str();
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto t0 = Clock::now();
  const AttritionTrace t7 = attrition(build_primorial_cycle(7));
  std::vector<Gap> shown;
  std::uint64_t lead = 0;
  std::size_t i = 0;
  while (lead < 16) lead += t7.final_gaps[i++];
  shown.push_back(static_cast<Gap>(lead));
  for (; i < t7.final_gaps.size(); ++i) shown.push_back(static_cast<Gap>(t7.final_gaps[i]));
  o.expect(format_compact(shown) == reference::g7_attrition_display(), "G(7#) surviving sequence");

  const GapCycle g13 = build_primorial_cycle(13);
  const AttritionTrace t13 = attrition(g13);
  std::uint64_t max_gap = 0;
  for (auto g : t13.final_gaps) max_gap = std::max<std::uint64_t>(max_gap, g);
  o.expect(max_gap == 52, "max gap " + std::to_string(max_gap));
  o.expect(t13.first_seen.at(max_gap) == 73, "first created at " + std::to_string(t13.first_seen.at(max_gap)));
  for (const auto& step : t13.steps) {
    std::uint64_t sum = 0;
    for (const auto& [g, c] : step.histogram) sum += g * c;
    o.expect(sum == 30030, "conservation at " + std::to_string(step.prime));
  }
  o.expect(t13.final_gaps.size() == reference::fig5().final_count,
           "final count " + std::to_string(t13.final_gaps.size()) + " != 3245");
  const double t = seconds_since(t0);
  o.expect(t < 10.0, "runtime " + std::to_string(t));
  if (o.pass) o.detail = "G(7#) sequence, 3245 gaps, max 52 at 73";
  return o;
}

// Worst observed over p_k = 13..23 with gaps 2, 4, 6 is about 0.16.
constexpr double kNaiveBand = 0.20;

Outcome criterion8() {
  Outcome o;
  o.expect(actual_gap_count(11, 121, std::vector<std::uint64_t>{2}) == 8, "twins in [11,121]");
  for (std::uint64_t g = 2; g <= 12; g += 2) {
    o.expect(actual_gap_count(11, 121, std::vector<std::uint64_t>{g}) ==
                 oracle::prime_pattern_count(11, 121, {g}),
             "gap " + std::to_string(g));
  }
  const std::vector<Constellation> targets{Constellation::single(2), Constellation::single(4),
                                           Constellation::single(6)};
  const auto rows = error_report(13, 23, targets);
  std::ostringstream a, b;
  write_error_csv(a, rows);
  write_error_csv(b, error_report(13, 23, targets));
  o.expect(a.str() == b.str(), "CSV not deterministic");
  double worst = 0;
  for (const auto& r : rows) {
    o.expect(r.rel_error.has_value(), "empty rel_error");
    if (r.rel_error) worst = std::max(worst, std::fabs(*r.rel_error));
  }
  o.expect(worst <= kNaiveBand, "worst relative error " + std::to_string(worst));
  std::ostringstream d;
  d << rows.size() << " rows, worst |rel_error| " << worst << " within " << kNaiveBand;
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    const CycleReport r = verify_cycle(build_primorial_cycle(p));
    o.expect(r.ok(), "cycle invariants " + std::to_string(p) + "#");
    if (p >= 5) o.expect(r.find("central-run") && r.find("central-run")->passed, "central run");
  }
  const GapCycle g13 = build_primorial_cycle(13);
  for (const char* text : {"2,4", "2,10,2,4", "6,4,2", "4,6,2,6,4", "12,2,4"}) {
    const auto s = Constellation::parse(text);
    o.expect(driving_terms_for_constellation(g13, s).counts ==
                 driving_terms_for_constellation(g13, s.reversed()).counts,
             std::string("reversal ") + text);
  }
  std::map<std::uint64_t, GapCycle> cycles;
  for (std::uint64_t p : {5, 7, 11, 13}) cycles.emplace(p, build_primorial_cycle(p));
  for (std::uint64_t p : {5, 7, 11}) {
    const std::uint64_t q = next_prime(p);
    for (std::uint64_t g = 2; g <= 40; g += 2) {
      if (g % q == 0) continue;
      o.expect(driving_terms_for_gap(cycles.at(q), g).total() ==
                   (q - 2) * driving_terms_for_gap(cycles.at(p), g).total(),
               "ratio sum g=" + std::to_string(g));
    }
  }
  std::uint64_t checked = 0;
  for (std::uint64_t g = 2; g <= 10'000; g += 2) {
    for (std::size_t j1 = 1; j1 <= 20; ++j1) {
      if (repetition_weight(g, j1).feasible != feasible_by_divisibility(g, j1)) {
        o.expect(false, "feasibility g=" + std::to_string(g));
      }
      ++checked;
    }
  }
  if (o.pass) o.detail = "cycle, reversal, ratio-sum and " + std::to_string(checked) + " feasibility checks";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cycle construction", criterion1},  {"census reference counts", criterion2},
      {"dynamic system", criterion3},      {"asymptotics", criterion4},
      {"eigenvalue products", criterion5}, {"crossover", criterion6},
      {"attrition", criterion7},           {"survival ground truth", criterion8},
      {"property suite", criterion9}};
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (only && id != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[i].first
              << "): " << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
