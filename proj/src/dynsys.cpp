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

#include "gapsieve/dynsys.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "gapsieve/error.hpp"

namespace gapsieve {

namespace {

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
}

void require_model_prime(std::uint64_t p, std::size_t J) {
  require_prime(p);
  if (p <= J + 1) {
    throw InvalidArgument("prime " + std::to_string(p) + " must exceed J + 1 = " +
                          std::to_string(J + 1) + " (eigenvalue p-J-1 would not be positive)");
  }
}

// Running compensated sum.
struct Kahan {
  long double sum = 0;
  long double c = 0;
  void add(long double x) {
    const long double y = x - c;
    const long double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

std::vector<Kahan> log_products(std::uint64_t lo, std::uint64_t hi, std::size_t jmax,
                                const SieveOptions& sieve) {
  std::vector<Kahan> acc(jmax + 1);
  if (lo > hi) return acc;
  PrimeStream stream(std::max<std::uint64_t>(lo, 2), hi, sieve);
  std::vector<Kahan> block_acc(jmax + 1);
  for (auto block = stream.next_block(); !block.empty(); block = stream.next_block()) {
    std::fill(block_acc.begin(), block_acc.end(), Kahan{});
    for (std::uint64_t q : block) {
      const long double denom = static_cast<long double>(q - 2);
      for (std::size_t j = 2; j <= jmax; ++j) {
        block_acc[j].add(std::log1p(-static_cast<long double>(j - 1) / denom));
      }
    }
    for (std::size_t j = 2; j <= jmax; ++j) acc[j].add(block_acc[j].sum);
  }
  return acc;
}

}  // namespace

SystemMatrices eigendecompose(std::uint64_t p, std::size_t j1, std::size_t J, Basis basis) {
  if (j1 < 1 || J < j1) throw InvalidArgument("need 1 <= j1 <= J");
  require_model_prime(p, J);
  SystemMatrices s;
  s.p = p;
  s.j1 = j1;
  s.J = J;
  const auto n = static_cast<Eigen::Index>(J - j1 + 1);
  s.M = transfer_matrix<Rational>(p, j1, J, basis);
  s.R = alternating_pascal_upper<Rational>(n);
  s.L = pascal_upper<Rational>(n);
  s.Lambda = s.M.diagonal().asDiagonal();
  return s;
}

Rational normalizer(std::uint64_t prime, std::size_t j1) {
  return to_rational(phi_i(j1 + 1, primorial(prime)));
}

PopulationVector make_population(std::uint64_t prime, std::size_t j1,
                                 const std::vector<Rational>& entries, Basis basis) {
  if (entries.empty()) throw InvalidArgument("population vector needs at least one entry");
  if (j1 < 1) throw InvalidArgument("j1 must be at least 1");
  require_prime(prime);
  PopulationVector v{prime, j1, basis, RationalVector(static_cast<Eigen::Index>(entries.size()))};
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < 0) throw InvalidArgument("population entries must be nonnegative");
    v.entries(static_cast<Eigen::Index>(i)) = entries[i];
  }
  return v;
}

PopulationVector from_census(const Census& census, Basis basis) {
  if (!census.modulus.is_primorial()) {
    throw InvalidArgument("population model needs a census on a primorial cycle");
  }
  std::vector<Rational> entries;
  for (std::uint64_t n : census.counts) entries.emplace_back(n);
  PopulationVector v = make_population(census.modulus.largest_factor(), census.j1(), entries,
                                       Basis::raw);
  return basis == Basis::raw ? v : to_normalized(v);
}

PopulationVector to_normalized(const PopulationVector& v) {
  if (v.basis == Basis::normalized) return v;
  PopulationVector out = v;
  out.basis = Basis::normalized;
  out.entries /= normalizer(v.prime, v.j1);
  return out;
}

PopulationVector to_raw(const PopulationVector& v) {
  if (v.basis == Basis::raw) return v;
  PopulationVector out = v;
  out.basis = Basis::raw;
  out.entries *= normalizer(v.prime, v.j1);
  return out;
}

PopulationVector extend_to(const PopulationVector& v, std::size_t J) {
  if (J <= v.J()) return v;
  PopulationVector out = v;
  const auto n = static_cast<Eigen::Index>(J - v.j1 + 1);
  out.entries = RationalVector::Zero(n);
  out.entries.head(v.entries.size()) = v.entries;
  return out;
}

PopulationVector step(const PopulationVector& v, std::uint64_t p) {
  require_model_prime(p, v.J());
  if (p <= v.prime) {
    throw InvalidArgument("step prime " + std::to_string(p) + " must follow the current stage " +
                          std::to_string(v.prime));
  }
  if (p != next_prime(v.prime)) {
    throw InvalidArgument("step prime " + std::to_string(p) + " skips primes after " +
                          std::to_string(v.prime));
  }
  PopulationVector out = v;
  out.prime = p;
  out.entries = transfer_matrix<Rational>(p, v.j1, v.J(), v.basis) * v.entries;
  return out;
}

PopulationVector iterate(const PopulationVector& v, std::uint64_t pk) {
  if (pk <= v.prime) {
    throw InvalidArgument("iterate needs pk > p0 (" + std::to_string(pk) + " <= " +
                          std::to_string(v.prime) + ")");
  }
  PopulationVector out = v;
  for (std::uint64_t p = next_prime(v.prime); p <= pk; p = next_prime(p)) out = step(out, p);
  return out;
}

Rational asymptotic_ratio(const PopulationVector& v0) {
  return to_normalized(v0).entries.sum();
}

const char* to_string(Validity v) {
  switch (v) {
    case Validity::full: return "full";
    case Validity::asymptotic_only: return "asymptotic-only";
    case Validity::invalid: return "invalid";
  }
  return "invalid";
}

Validity validity(const Constellation& s, std::uint64_t p0) {
  if (s.sum() < 2 * next_prime(p0)) return Validity::full;
  const auto& g = s.gaps();
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::uint64_t sum = 0;
    for (std::size_t j = i; j < g.size(); ++j) {
      sum += g[j];
      const auto factors = distinct_prime_factors(sum);
      if (!factors.empty() && factors.back() > p0) return Validity::invalid;
    }
  }
  return Validity::asymptotic_only;
}

std::vector<long double> eigenvalue_products(std::uint64_t p0, std::uint64_t pk, std::size_t jmax,
                                             const EigenOptions& options) {
  if (jmax < 2) throw InvalidArgument("jmax must be at least 2");
  if (p0 < jmax + 1) {
    throw InvalidArgument("p0 = " + std::to_string(p0) + " must be at least jmax + 1 = " +
                          std::to_string(jmax + 1));
  }
  if (pk < p0) throw InvalidArgument("pk must not be below p0");
  if (pk - p0 > options.budget) {
    throw CapacityError("range (" + std::to_string(p0) + ", " + std::to_string(pk) +
                        "] exceeds the sieve budget of " + std::to_string(options.budget));
  }

  // Contiguous slices, one per thread, combined in ascending order.
  const unsigned threads = std::max(1u, options.threads);
  const std::uint64_t width = pk - p0;
  std::vector<std::vector<Kahan>> parts(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = p0 + 1 + width / threads * t;
    const std::uint64_t hi = (t + 1 == threads) ? pk : p0 + width / threads * (t + 1);
    auto work = [&, t, lo, hi] { parts[t] = log_products(lo, hi, jmax, options.sieve); };
    if (threads == 1) {
      work();
    } else {
      pool.emplace_back(work);
    }
  }
  for (auto& th : pool) th.join();

  std::vector<long double> out;
  for (std::size_t j = 2; j <= jmax; ++j) {
    Kahan total;
    for (const auto& part : parts) total.add(part[j].sum);
    out.push_back(std::exp(total.sum));
  }
  return out;
}

std::vector<Rational> polynomial_approx(const PopulationVector& v0) {
  const PopulationVector v = to_normalized(v0);
  const RationalVector c = pascal_upper<Rational>(v.entries.size()) * v.entries;
  return {c.begin(), c.end()};
}

Rational evaluate_approx(const std::vector<Rational>& coeffs, const Rational& a) {
  // Horner on sum_m (-1)^m c_m a^m, m from 0.
  Rational acc = 0;
  for (std::size_t m = coeffs.size(); m-- > 0;) {
    acc = acc * a + (m % 2 ? -coeffs[m] : coeffs[m]);
  }
  return acc;
}

std::optional<Crossover> crossover(const PopulationVector& a, const PopulationVector& b,
                                   double tolerance) {
  if (a.prime != b.prime) throw InvalidArgument("crossover needs vectors at the same prime");
  auto ca = polynomial_approx(a);
  auto cb = polynomial_approx(b);
  const std::size_t n = std::max(ca.size(), cb.size());
  ca.resize(n, Rational(0));
  cb.resize(n, Rational(0));
  std::vector<Rational> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = ca[i] - cb[i];
  if (std::all_of(diff.begin(), diff.end(), [](const Rational& c) { return c == 0; })) {
    return std::nullopt;
  }

  auto sign = [&](const Rational& x) {
    const Rational v = evaluate_approx(diff, x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  };
  constexpr int kGrid = 4096;
  int prev = sign(Rational(0));
  for (int k = 1; k <= kGrid; ++k) {
    const Rational x(k, kGrid);
    const int s = sign(x);
    if (s == 0 && k < kGrid) return Crossover{to_double(x), x, x};
    if (prev != 0 && s != 0 && prev != s) {
      Rational lo(k - 1, kGrid), hi = x;
      while (to_double(hi - lo) > tolerance) {
        const Rational mid = (lo + hi) / 2;
        const int sm = sign(mid);
        if (sm == 0) return Crossover{to_double(mid), mid, mid};
        if (sm == prev) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return Crossover{to_double((lo + hi) / 2), lo, hi};
    }
    prev = s;
  }
  return std::nullopt;
}

double log10_prime_for_a2(std::uint64_t p0, double target, std::uint64_t anchor,
                          const EigenOptions& options) {
  if (!(target > 0 && target < 1)) throw InvalidArgument("a2 target must lie in (0, 1)");
  const long double at_anchor = eigenvalue_products(p0, anchor, 2, options)[0];
  if (at_anchor <= target) {
    // Crossed inside the sieved range: find the prime exactly.
    long double log_sum = 0;
    const long double log_target = std::log(static_cast<long double>(target));
    std::uint64_t found = anchor;
    bool done = false;
    PrimeStream stream(p0 + 1, anchor, options.sieve);
    for (auto block = stream.next_block(); !block.empty() && !done; block = stream.next_block()) {
      for (std::uint64_t q : block) {
        log_sum += std::log1p(-1.0L / static_cast<long double>(q - 2));
        if (log_sum <= log_target) {
          found = q;
          done = true;
          break;
        }
      }
    }
    return std::log10(static_cast<double>(found));
  }
  const long double ln_p = std::log(static_cast<long double>(anchor)) * at_anchor / target;
  return static_cast<double>(ln_p / std::log(10.0L));
}

}  // namespace gapsieve
