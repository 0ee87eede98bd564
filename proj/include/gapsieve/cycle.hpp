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
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "gapsieve/primal.hpp"

namespace gapsieve {

using Gap = std::uint16_t;

/// Cyclic gaps between consecutive generators of Z mod N, starting at 1.
struct GapCycle {
  SquarefreeModulus modulus;
  std::vector<Gap> gaps;

  std::size_t size() const { return gaps.size(); }
  friend bool operator==(const GapCycle&, const GapCycle&) = default;
};

// G(1) = [1]: the single generator 1 of the trivial ring.
GapCycle base_cycle();

struct ExtendStats {
  std::uint64_t closures = 0;
};

// Sieve G(N) by a new prime q (q must not divide N). Exactly phi(N)
// closures occur; `stats` receives the count when non-null.
GapCycle extend_cycle(const GapCycle& cycle, std::uint64_t q, ExtendStats* stats = nullptr);

// q concatenated copies of the gaps, i.e. G(N) read over [1, qN+1].
std::vector<Gap> replicate_gaps(const GapCycle& cycle, std::uint64_t q);

GapCycle build_cycle(const SquarefreeModulus& modulus);

struct BuildOptions {
  std::uint64_t max_in_memory_gaps = std::uint64_t{1} << 28;
};

GapCycle build_primorial_cycle(std::uint64_t p, const BuildOptions& options = {});

// Builds G(p#) straight into a cache file; the final stage is never held in
// memory. Returns the number of gaps written.
std::uint64_t build_primorial_cycle_to_file(std::uint64_t p, const std::filesystem::path& out,
                                            const BuildOptions& options = {});

// Direct scan of [1, N+1] marking multiples of each factor. N <= 1e8.
GapCycle oracle_cycle(const SquarefreeModulus& modulus);

struct CycleCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CycleReport {
  std::vector<CycleCheck> checks;

  bool ok() const;
  const CycleCheck* find(const std::string& name) const;
};

CycleReport verify_cycle(const GapCycle& cycle);

// Gaps below 10 are run together, wider gaps are set off by commas:
// 6,4,2,4 -> "6424", 10,2,4 -> "10,24".
std::string format_compact(std::span<const Gap> gaps);

// ---------------------------------------------------------------------------
// Cache files

inline constexpr char kCacheMagic[4] = {'G', 'A', 'P', 'C'};
inline constexpr std::uint8_t kCacheVersion = 1;

class CacheWriter {
 public:
  CacheWriter(const std::filesystem::path& path, const SquarefreeModulus& modulus,
              std::uint64_t gap_count);
  ~CacheWriter();

  void write(std::span<const Gap> gaps);
  void push(Gap gap);
  // Flushes and checks that exactly gap_count gaps were written.
  void close();

 private:
  void flush_buffer();

  std::filesystem::path path_;
  std::ofstream out_;
  std::uint64_t expected_;
  std::uint64_t written_ = 0;
  std::vector<Gap> buffer_;
  bool closed_ = false;
};

class CacheReader {
 public:
  explicit CacheReader(const std::filesystem::path& path);

  const SquarefreeModulus& modulus() const { return modulus_; }
  std::uint64_t gap_count() const { return count_; }

  // Reads up to out.size() gaps; returns how many were read (0 at end).
  std::size_t read(std::span<Gap> out);

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  SquarefreeModulus modulus_;
  std::uint64_t count_ = 0;
  std::uint64_t consumed_ = 0;
};

void write_cache(const std::filesystem::path& path, const GapCycle& cycle);
GapCycle read_cache(const std::filesystem::path& path);

}  // namespace gapsieve
