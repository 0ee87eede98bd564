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
#include <span>
#include <vector>

#include "gapsieve/rational.hpp"

namespace gapsieve {

bool is_prime(std::uint64_t n);

// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

// Largest prime strictly smaller than n, or 0 when there is none.
std::uint64_t previous_prime(std::uint64_t n);

// Distinct prime factors of n in ascending order (trial division).
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

std::uint64_t isqrt(std::uint64_t n);

struct SieveOptions {
  // Candidates per segment.
  std::uint64_t block_size = std::uint64_t{1} << 20;
  // Base primes are sieved up to sqrt(b); refuse ranges needing more than this.
  std::uint64_t max_base_prime = std::uint64_t{1} << 26;
  // primes_in() refuses windows wider than this.
  std::uint64_t max_span = std::uint64_t{1} << 33;
};

/// Ascending primes in [a, b], produced one segment at a time.
///
/// Memory is O(sqrt(b) + block_size) regardless of the width of the
/// window, so a stream over [17, 10^12] is fine where a list is not.
class PrimeStream {
 public:
  PrimeStream(std::uint64_t a, std::uint64_t b, SieveOptions options = {});

  // Primes of the next segment holding at least one prime; empty when done.
  std::span<const std::uint64_t> next_block();

  std::optional<std::uint64_t> next();

  std::uint64_t lower() const { return lower_; }
  std::uint64_t upper() const { return upper_; }

 private:
  void sieve_segment(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t lower_;
  std::uint64_t upper_;
  SieveOptions options_;
  std::vector<std::uint64_t> base_primes_;
  std::vector<std::uint8_t> marks_;
  std::vector<std::uint64_t> block_;
  std::size_t block_pos_ = 0;
  std::uint64_t cursor_;
  bool exhausted_ = false;
};

std::vector<std::uint64_t> primes_in(std::uint64_t a, std::uint64_t b,
                                     const SieveOptions& options = {});

template <class Fn>
void for_each_prime(std::uint64_t a, std::uint64_t b, Fn&& fn,
                    const SieveOptions& options = {}) {
  PrimeStream stream(a, b, options);
  for (auto block = stream.next_block(); !block.empty(); block = stream.next_block()) {
    for (std::uint64_t p : block) fn(p);
  }
}

/// A product of distinct primes, kept with its factor list.
class SquarefreeModulus {
 public:
  // The empty product, 1.
  SquarefreeModulus() = default;

  // Factors may come in any order; they must be distinct primes and the
  // product must fit in 128 bits.
  static SquarefreeModulus from_factors(std::vector<std::uint64_t> factors);

  const std::vector<std::uint64_t>& factors() const { return factors_; }
  const WideUint& value() const { return value_; }

  // Throws CapacityError when the value does not fit in 64 bits.
  std::uint64_t value_u64() const;

  // 0 for the empty product.
  std::uint64_t largest_factor() const { return factors_.empty() ? 0 : factors_.back(); }

  bool divisible_by(std::uint64_t q) const;

  // True when the factors are exactly the primes up to the largest one.
  bool is_primorial() const;

  SquarefreeModulus times(std::uint64_t q) const;

  friend bool operator==(const SquarefreeModulus&, const SquarefreeModulus&) = default;

 private:
  std::vector<std::uint64_t> factors_;
  WideUint value_ = 1;
};

// Product of all primes <= p. Requires p prime and p <= 101.
SquarefreeModulus primorial(std::uint64_t p);

// prod over factors q > i of (q - i); 1 for the empty product.
WideUint phi_i(std::uint64_t i, const SquarefreeModulus& modulus);

inline WideUint euler_phi(const SquarefreeModulus& modulus) { return phi_i(1, modulus); }

// Product of the distinct primes dividing an even g >= 2.
SquarefreeModulus radical_of_even(std::uint64_t g);

}  // namespace gapsieve
