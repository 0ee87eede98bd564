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
#include <vector>

#include "gapsieve/census.hpp"
#include "gapsieve/primal.hpp"
#include "gapsieve/rational.hpp"

namespace gapsieve {

enum class Basis { raw, normalized };

// L_ij = C(j, i) for i <= j (0-based), the upper triangular Pascal matrix.
template <class Scalar>
Matrix<Scalar> pascal_upper(Eigen::Index n) {
  Matrix<Scalar> L = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    L(0, j) = Scalar(1);
    for (Eigen::Index i = 1; i <= j; ++i) L(i, j) = L(i - 1, j - 1) + (i < j ? L(i, j - 1) : Scalar(0));
  }
  return L;
}

// R_ij = (-1)^(i+j) C(j, i); the inverse of pascal_upper.
template <class Scalar>
Matrix<Scalar> alternating_pascal_upper(Eigen::Index n) {
  Matrix<Scalar> R = pascal_upper<Scalar>(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j)
      if ((i + j) % 2) R(i, j) = -R(i, j);
  return R;
}

/// M_{j1:J}(p), rows and columns indexed by length j1..J.
///
/// Diagonal (p - j - 1), superdiagonal (j + 1 - j1). The normalized form is
/// scaled by 1/(p - j1 - 1) so that the leading eigenvalue is 1.
template <class Scalar>
Matrix<Scalar> transfer_matrix(std::uint64_t p, std::size_t j1, std::size_t J,
                               Basis basis = Basis::raw) {
  const auto n = static_cast<Eigen::Index>(J - j1 + 1);
  Matrix<Scalar> M = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto j = j1 + static_cast<std::size_t>(i);
    M(i, i) = Scalar(static_cast<long long>(p) - static_cast<long long>(j) - 1);
    if (i + 1 < n) M(i, i + 1) = Scalar(static_cast<long long>(j + 1 - j1));
  }
  if (basis == Basis::normalized) M /= Scalar(static_cast<long long>(p - j1 - 1));
  return M;
}

template <class Scalar>
Vector<Scalar> transfer_eigenvalues(std::uint64_t p, std::size_t j1, std::size_t J,
                                    Basis basis = Basis::raw) {
  return transfer_matrix<Scalar>(p, j1, J, basis).diagonal();
}

struct SystemMatrices {
  std::uint64_t p = 0;
  std::size_t j1 = 1;
  std::size_t J = 1;
  RationalMatrix M;
  RationalMatrix R;
  RationalMatrix L;
  RationalMatrix Lambda;
};

// M = R * Lambda * L with R, L Pascal. Requires p prime and p > J + 1.
SystemMatrices eigendecompose(std::uint64_t p, std::size_t j1, std::size_t J,
                              Basis basis = Basis::raw);

/// Populations of a target and its driving terms at one stage p#.
struct PopulationVector {
  std::uint64_t prime = 0;
  std::size_t j1 = 1;
  Basis basis = Basis::raw;
  RationalVector entries;

  std::size_t J() const { return j1 + static_cast<std::size_t>(entries.size()) - 1; }
};

PopulationVector from_census(const Census& census, Basis basis = Basis::raw);
PopulationVector make_population(std::uint64_t prime, std::size_t j1,
                                 const std::vector<Rational>& entries, Basis basis);

// phi_{j1+1}(p#), the reference population for length-j1 targets.
Rational normalizer(std::uint64_t prime, std::size_t j1);

PopulationVector to_normalized(const PopulationVector& v);
PopulationVector to_raw(const PopulationVector& v);

// Pads with zero entries up to length J.
PopulationVector extend_to(const PopulationVector& v, std::size_t J);

PopulationVector step(const PopulationVector& v, std::uint64_t p);
PopulationVector iterate(const PopulationVector& v, std::uint64_t pk);

// Sum of the normalized entries, the limit of the target's ratio.
Rational asymptotic_ratio(const PopulationVector& v0);

enum class Validity { full, asymptotic_only, invalid };
const char* to_string(Validity v);

Validity validity(const Constellation& s, std::uint64_t p0);

struct EigenOptions {
  unsigned threads = 1;
  SieveOptions sieve{};
  // Refuse ranges wider than this many integers.
  std::uint64_t budget = 2'000'000'000'000ULL;
};

// a_j^k = prod over primes q in (p0, pk] of (q-j-1)/(q-2), j = 2..jmax.
// Returned vector holds j = 2 at index 0.
std::vector<long double> eigenvalue_products(std::uint64_t p0, std::uint64_t pk, std::size_t jmax,
                                             const EigenOptions& options = {});

// c_m = (L v0)_m; w_{.,1} is approximated by sum (-1)^(m+1) c_m a^(m-1).
std::vector<Rational> polynomial_approx(const PopulationVector& v0);

Rational evaluate_approx(const std::vector<Rational>& coeffs, const Rational& a);

struct Crossover {
  double a2 = 0;
  Rational lo;
  Rational hi;
};

// Smallest a in (0, 1) where the two approximations agree. Bisection on
// exact rationals to width `tolerance`.
std::optional<Crossover> crossover(const PopulationVector& a, const PopulationVector& b,
                                   double tolerance = 1e-6);

// Rough location of the prime where a_2^k falls to `target`: a_2^k is
// sieved exactly up to `anchor`, then extended with a_2 ~ c / log p.
// Returns log10 of the prime.
double log10_prime_for_a2(std::uint64_t p0, double target, std::uint64_t anchor,
                          const EigenOptions& options = {});

}  // namespace gapsieve
