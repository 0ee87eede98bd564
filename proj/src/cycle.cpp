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

#include "gapsieve/cycle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gapsieve/error.hpp"

namespace gapsieve {

namespace {

constexpr std::uint64_t kOracleLimit = 100'000'000;

/// One closure pass over q copies of a cycle.
///
/// `source(visit)` must call visit(g) for every gap of the cycle in order; it
/// is invoked q times. Candidates are tracked by their residue mod q, and a
/// candidate with residue 0 is struck by merging its two neighbouring gaps.
/// The final candidate qN+1 is 1 mod q, so nothing wraps.
template <class Source, class Sink>
std::uint64_t close_multiples(Source&& source, std::uint64_t q, Sink&& sink) {
  std::uint64_t residue = 1 % q;
  std::uint64_t pending = 0;
  std::uint64_t closures = 0;
  auto visit = [&](Gap g) {
    pending += g;
    residue += g;
    if (residue >= q) residue %= q;
    if (residue == 0) {
      ++closures;
      return;
    }
    if (pending > 0xFFFF) {
      throw CapacityError("merged gap " + std::to_string(pending) + " exceeds the u16 gap range");
    }
    sink(static_cast<Gap>(pending));
    pending = 0;
  };
  for (std::uint64_t copy = 0; copy < q; ++copy) source(visit);
  return closures;
}

void check_extension_prime(const GapCycle& cycle, std::uint64_t q) {
  if (!is_prime(q)) throw InvalidArgument(std::to_string(q) + " is not prime");
  if (cycle.modulus.divisible_by(q)) {
    throw InvalidArgument(std::to_string(q) +
                          " already divides the modulus; use replicate_gaps for the q-fold copy");
  }
}

std::uint64_t phi_u64(const SquarefreeModulus& modulus) {
  const WideUint phi = euler_phi(modulus);
  if (phi > WideUint(~std::uint64_t{0})) throw CapacityError("phi(N) exceeds 64 bits");
  return static_cast<std::uint64_t>(phi);
}

std::string join_gaps(std::span<const Gap> gaps) {
  std::ostringstream os;
  for (std::size_t i = 0; i < gaps.size(); ++i) os << (i ? "," : "") << gaps[i];
  return os.str();
}

}  // namespace

GapCycle base_cycle() { return GapCycle{SquarefreeModulus(), {1}}; }

GapCycle extend_cycle(const GapCycle& cycle, std::uint64_t q, ExtendStats* stats) {
  check_extension_prime(cycle, q);
  GapCycle next{cycle.modulus.times(q), {}};
  next.gaps.reserve(cycle.gaps.size() * (q - 1));
  const std::uint64_t closures = close_multiples(
      [&](auto& visit) {
        for (Gap g : cycle.gaps) visit(g);
      },
      q, [&](Gap g) { next.gaps.push_back(g); });
  if (closures != cycle.gaps.size()) {
    throw Error("closure count " + std::to_string(closures) + " differs from phi(N) = " +
                std::to_string(cycle.gaps.size()));
  }
  if (stats) stats->closures = closures;
  return next;
}

std::vector<Gap> replicate_gaps(const GapCycle& cycle, std::uint64_t q) {
  std::vector<Gap> out;
  out.reserve(cycle.gaps.size() * q);
  for (std::uint64_t copy = 0; copy < q; ++copy) {
    out.insert(out.end(), cycle.gaps.begin(), cycle.gaps.end());
  }
  return out;
}

GapCycle build_cycle(const SquarefreeModulus& modulus) {
  GapCycle cycle = base_cycle();
  for (std::uint64_t q : modulus.factors()) cycle = extend_cycle(cycle, q);
  return cycle;
}

GapCycle build_primorial_cycle(std::uint64_t p, const BuildOptions& options) {
  const SquarefreeModulus target = primorial(p);
  const WideUint phi = euler_phi(target);
  if (phi > WideUint(options.max_in_memory_gaps)) {
    throw CapacityError("G(" + std::to_string(p) + "#) has " + phi.str() +
                        " gaps, above the in-memory limit of " +
                        std::to_string(options.max_in_memory_gaps) + "; use stream mode");
  }
  return build_cycle(target);
}

std::uint64_t build_primorial_cycle_to_file(std::uint64_t p, const std::filesystem::path& out,
                                            const BuildOptions& options) {
  const SquarefreeModulus target = primorial(p);
  const auto& factors = target.factors();

  // Grow in memory while the next stage fits, then go file to file.
  GapCycle cycle = base_cycle();
  std::size_t stage = 0;
  while (stage < factors.size()) {
    const WideUint next_phi = euler_phi(cycle.modulus.times(factors[stage]));
    if (stage + 1 == factors.size() || next_phi > WideUint(options.max_in_memory_gaps)) break;
    cycle = extend_cycle(cycle, factors[stage]);
    ++stage;
  }

  std::filesystem::path source_path;
  std::vector<std::filesystem::path> scratch;
  SquarefreeModulus modulus = cycle.modulus;
  for (; stage < factors.size(); ++stage) {
    const std::uint64_t q = factors[stage];
    const SquarefreeModulus next_modulus = modulus.times(q);
    const bool last = stage + 1 == factors.size();
    std::filesystem::path dest = out;
    if (!last) {
      dest = out;
      dest += ".stage" + std::to_string(q);
      scratch.push_back(dest);
    }
    const std::uint64_t phi = phi_u64(modulus);
    CacheWriter writer(dest, next_modulus, phi_u64(next_modulus));
    std::uint64_t closures = 0;
    if (source_path.empty()) {
      closures = close_multiples(
          [&](auto& visit) {
            for (Gap g : cycle.gaps) visit(g);
          },
          q, [&](Gap g) { writer.push(g); });
      cycle.gaps.clear();
      cycle.gaps.shrink_to_fit();
    } else {
      std::vector<Gap> chunk(std::size_t{1} << 20);
      closures = close_multiples(
          [&](auto& visit) {
            CacheReader reader(source_path);
            for (std::size_t n = reader.read(chunk); n > 0; n = reader.read(chunk)) {
              for (std::size_t i = 0; i < n; ++i) visit(chunk[i]);
            }
          },
          q, [&](Gap g) { writer.push(g); });
    }
    writer.close();
    if (closures != phi) throw Error("closure count differs from phi(N) while streaming");
    source_path = dest;
    modulus = next_modulus;
  }
  for (const auto& path : scratch) std::filesystem::remove(path);
  return phi_u64(target);
}

GapCycle oracle_cycle(const SquarefreeModulus& modulus) {
  if (modulus.value() > WideUint(kOracleLimit)) {
    throw CapacityError("oracle_cycle limited to N <= 1e8, got " + modulus.value().str());
  }
  const std::uint64_t n = modulus.value_u64();
  std::vector<bool> struck(n + 2, false);
  for (std::uint64_t q : modulus.factors()) {
    for (std::uint64_t m = q; m <= n + 1; m += q) struck[m] = true;
  }
  GapCycle cycle{modulus, {}};
  std::uint64_t previous = 1;
  for (std::uint64_t v = 2; v <= n + 1; ++v) {
    if (struck[v]) continue;
    cycle.gaps.push_back(static_cast<Gap>(v - previous));
    previous = v;
  }
  return cycle;
}

// ---------------------------------------------------------------------------
// Verification

bool CycleReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CycleCheck& c) { return c.passed; });
}

const CycleCheck* CycleReport::find(const std::string& name) const {
  for (const auto& check : checks) {
    if (check.name == name) return &check;
  }
  return nullptr;
}

CycleReport verify_cycle(const GapCycle& cycle) {
  CycleReport report;
  auto add = [&](std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed, std::move(detail)});
  };
  const auto& gaps = cycle.gaps;
  const WideUint n = cycle.modulus.value();
  const WideUint phi = euler_phi(cycle.modulus);

  add("count", WideUint(gaps.size()) == phi,
      "gaps " + std::to_string(gaps.size()) + ", phi(N) " + phi.str());

  WideUint sum = 0;
  for (Gap g : gaps) sum += g;
  add("sum", sum == n, "sum " + sum.str() + ", N " + n.str());

  if (n > 2) {
    const bool last_two = !gaps.empty() && gaps.back() == 2;
    add("last-gap", last_two,
        "last gap " + (gaps.empty() ? std::string("none") : std::to_string(gaps.back())));
  }

  if (!gaps.empty()) {
    const std::size_t m = gaps.size();
    std::size_t bad = m;
    for (std::size_t j = 1; j < m; ++j) {
      if (gaps[j - 1] != gaps[m - j - 1]) {
        bad = j;
        break;
      }
    }
    add("palindrome", bad == m,
        bad == m ? "g_j = g_{phi-j}" : "first mismatch at j = " + std::to_string(bad));
  }

  if (cycle.modulus.divisible_by(2)) {
    const bool even = std::all_of(gaps.begin(), gaps.end(), [](Gap g) { return g % 2 == 0; });
    add("even-gaps", even, even ? "all gaps even" : "odd gap present");
  }

  // Generators: every prefix sum below N must avoid all factors.
  if (sum == n && n <= WideUint(~std::uint64_t{0})) {
    std::uint64_t v = 1;
    std::uint64_t bad = 0;
    for (std::size_t j = 0; j + 1 < gaps.size() && bad == 0; ++j) {
      v += gaps[j];
      for (std::uint64_t q : cycle.modulus.factors()) {
        if (v % q == 0) {
          bad = v;
          break;
        }
      }
    }
    add("generators", bad == 0,
        bad == 0 ? "prefix sums coprime to N" : "prefix sum " + std::to_string(bad) + " not coprime");
  }

  const std::uint64_t p = cycle.modulus.largest_factor();
  if (cycle.modulus.is_primorial() && p >= 5 && gaps.size() >= 2) {
    const std::uint64_t wide = 2 * previous_prime(p);
    const auto copies = std::count(gaps.begin(), gaps.end(), static_cast<Gap>(wide));
    add("two-wide-gaps", copies >= 2,
        std::to_string(copies) + " gaps of size " + std::to_string(wide));

    // Run 2^j ... 4 2 4 2 4 ... 2^j around the gap N/2-2 -> N/2+2, which is
    // gap index phi/2 (1-based).
    const std::uint64_t next = next_prime(p);
    std::uint64_t j = 1;
    while ((std::uint64_t{1} << (j + 1)) <= next) ++j;
    const std::size_t center = gaps.size() / 2 - 1;
    std::vector<Gap> expected;
    for (std::uint64_t d = 0; d <= j; ++d) {
      expected.push_back(d == 0 ? 4 : d == 1 ? 2 : static_cast<Gap>(std::uint64_t{1} << d));
    }
    bool run_ok = center >= j && center + j < gaps.size();
    for (std::uint64_t d = 0; run_ok && d <= j; ++d) {
      run_ok = gaps[center - d] == expected[d] && gaps[center + d] == expected[d];
    }
    std::vector<Gap> run;
    if (center >= j && center + j < gaps.size()) {
      run.assign(gaps.begin() + static_cast<std::ptrdiff_t>(center - j),
                 gaps.begin() + static_cast<std::ptrdiff_t>(center + j + 1));
    }
    add("central-run", run_ok, "j = " + std::to_string(j) + ", run " + join_gaps(run));
  }
  return report;
}

std::string format_compact(std::span<const Gap> gaps) {
  std::string out;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (i > 0 && (gaps[i] >= 10 || gaps[i - 1] >= 10)) out += ',';
    out += std::to_string(gaps[i]);
  }
  return out;
}

}  // namespace gapsieve
