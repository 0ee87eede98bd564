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

#include "gapsieve/primal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gapsieve/error.hpp"

namespace gapsieve {

namespace {

constexpr std::uint64_t kMaxPrimorialPrime = 101;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> small_primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<std::uint8_t> composite(limit + 1, 0);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t m = i * i; m <= limit; m += i) composite[m] = 1;
  }
  return primes;
}

}  // namespace

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  std::uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::uint64_t previous_prime(std::uint64_t n) {
  for (std::uint64_t c = n; c > 2;) {
    --c;
    if (is_prime(c)) return c;
  }
  return 0;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> factors;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    factors.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

// ---------------------------------------------------------------------------
// Segmented sieve

PrimeStream::PrimeStream(std::uint64_t a, std::uint64_t b, SieveOptions options)
    : lower_(a), upper_(b), options_(options), cursor_(a) {
  if (a < 2 || a > b) {
    throw InvalidArgument("prime range must satisfy 2 <= a <= b (got [" + std::to_string(a) +
                          ", " + std::to_string(b) + "])");
  }
  if (b > (std::uint64_t{1} << 63) - 1) {
    throw InvalidArgument("prime range upper bound exceeds 2^63-1");
  }
  if (options_.block_size < 64) options_.block_size = 64;
  const std::uint64_t root = isqrt(b);
  if (root > options_.max_base_prime) {
    throw CapacityError("sieving to " + std::to_string(b) + " needs base primes up to " +
                        std::to_string(root) + ", above the configured budget of " +
                        std::to_string(options_.max_base_prime));
  }
  base_primes_ = small_primes_up_to(root);
}

void PrimeStream::sieve_segment(std::uint64_t lo, std::uint64_t hi) {
  block_.clear();
  block_pos_ = 0;
  if (lo <= 2 && 2 <= hi) block_.push_back(2);

  // Odd candidates only: index i <-> first_odd + 2i.
  const std::uint64_t first_odd = std::max<std::uint64_t>(lo | 1, 3);
  if (first_odd > hi) return;
  const std::uint64_t count = (hi - first_odd) / 2 + 1;
  marks_.assign(count, 0);

  for (std::uint64_t p : base_primes_) {
    if (p == 2) continue;
    if (p * p > hi) break;
    std::uint64_t start = std::max(p * p, (first_odd + p - 1) / p * p);
    if ((start & 1) == 0) start += p;
    for (std::uint64_t m = start; m <= hi; m += 2 * p) marks_[(m - first_odd) / 2] = 1;
  }
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!marks_[i]) block_.push_back(first_odd + 2 * i);
  }
}

std::span<const std::uint64_t> PrimeStream::next_block() {
  while (!exhausted_) {
    const std::uint64_t lo = cursor_;
    const std::uint64_t hi =
        (upper_ - lo < options_.block_size) ? upper_ : lo + options_.block_size - 1;
    if (hi == upper_) {
      exhausted_ = true;
    } else {
      cursor_ = hi + 1;
    }
    sieve_segment(lo, hi);
    if (!block_.empty()) {
      block_pos_ = block_.size();
      return block_;
    }
  }
  block_.clear();
  return {};
}

std::optional<std::uint64_t> PrimeStream::next() {
  if (block_pos_ < block_.size()) return block_[block_pos_++];
  auto block = next_block();
  if (block.empty()) return std::nullopt;
  block_pos_ = 1;
  return block.front();
}

std::vector<std::uint64_t> primes_in(std::uint64_t a, std::uint64_t b,
                                     const SieveOptions& options) {
  if (a <= b && b - a > options.max_span) {
    throw CapacityError("prime window of width " + std::to_string(b - a) +
                        " exceeds the list budget of " + std::to_string(options.max_span));
  }
  std::vector<std::uint64_t> primes;
  PrimeStream stream(a, b, options);
  for (auto block = stream.next_block(); !block.empty(); block = stream.next_block()) {
    primes.insert(primes.end(), block.begin(), block.end());
  }
  return primes;
}

// ---------------------------------------------------------------------------
// Squarefree moduli

SquarefreeModulus SquarefreeModulus::from_factors(std::vector<std::uint64_t> factors) {
  std::sort(factors.begin(), factors.end());
  if (std::adjacent_find(factors.begin(), factors.end()) != factors.end()) {
    throw InvalidArgument("squarefree modulus factors must be distinct");
  }
  SquarefreeModulus modulus;
  for (std::uint64_t q : factors) {
    if (!is_prime(q)) {
      throw InvalidArgument("modulus factor " + std::to_string(q) + " is not prime");
    }
    try {
      modulus.value_ *= q;
    } catch (const std::overflow_error&) {
      throw CapacityError("squarefree modulus exceeds 128 bits");
    }
  }
  modulus.factors_ = std::move(factors);
  return modulus;
}

std::uint64_t SquarefreeModulus::value_u64() const {
  if (value_ > WideUint(~std::uint64_t{0})) {
    throw CapacityError("modulus " + value_.str() + " does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(value_);
}

bool SquarefreeModulus::divisible_by(std::uint64_t q) const {
  return std::binary_search(factors_.begin(), factors_.end(), q);
}

bool SquarefreeModulus::is_primorial() const {
  if (factors_.empty()) return false;
  std::uint64_t expected = 2;
  for (std::uint64_t q : factors_) {
    if (q != expected) return false;
    expected = next_prime(expected);
  }
  return true;
}

SquarefreeModulus SquarefreeModulus::times(std::uint64_t q) const {
  if (divisible_by(q)) {
    throw InvalidArgument(std::to_string(q) + " already divides the modulus");
  }
  auto factors = factors_;
  factors.push_back(q);
  return from_factors(std::move(factors));
}

SquarefreeModulus primorial(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument("primorial needs a prime, got " + std::to_string(p));
  if (p > kMaxPrimorialPrime) {
    throw CapacityError("primorial limited to p <= 101 (128-bit modulus), got " +
                        std::to_string(p));
  }
  return SquarefreeModulus::from_factors(small_primes_up_to(p));
}

WideUint phi_i(std::uint64_t i, const SquarefreeModulus& modulus) {
  WideUint result = 1;
  for (std::uint64_t q : modulus.factors()) {
    if (q > i) result *= (q - i);
  }
  return result;
}

SquarefreeModulus radical_of_even(std::uint64_t g) {
  if (g < 2 || g % 2 != 0) {
    throw InvalidArgument("expected an even gap >= 2, got " + std::to_string(g));
  }
  return SquarefreeModulus::from_factors(distinct_prime_factors(g));
}

}  // namespace gapsieve
