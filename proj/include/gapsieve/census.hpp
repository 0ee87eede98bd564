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
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gapsieve/cycle.hpp"
#include "gapsieve/rational.hpp"

namespace gapsieve {

/// A run of consecutive gaps, e.g. 2,10,2. A single gap g is [g].
class Constellation {
 public:
  explicit Constellation(std::vector<std::uint64_t> gaps);

  // Comma separated positive even integers: "2,10,2".
  static Constellation parse(std::string_view text);
  static Constellation single(std::uint64_t g) { return Constellation({g}); }

  const std::vector<std::uint64_t>& gaps() const { return gaps_; }
  std::size_t length() const { return gaps_.size(); }
  std::uint64_t sum() const { return sum_; }
  bool is_single() const { return gaps_.size() == 1; }

  Constellation reversed() const;
  std::string to_string() const;

  friend bool operator==(const Constellation&, const Constellation&) = default;

 private:
  std::vector<std::uint64_t> gaps_;
  std::uint64_t sum_ = 0;
};

/// Driving-term counts n_{s,j} for j = j1..J on one cycle.
struct Census {
  Constellation target;
  SquarefreeModulus modulus;
  // counts[i] is n_{s, j1+i}; the last entry is nonzero unless all are.
  std::vector<std::uint64_t> counts;

  std::size_t j1() const { return target.length(); }
  std::size_t J() const { return j1() + counts.size() - 1; }
  std::uint64_t at(std::size_t j) const;
  std::uint64_t total() const;
};

struct CensusOptions {
  unsigned threads = 1;
};

std::uint64_t count_gap(const GapCycle& cycle, std::uint64_t g);

std::uint64_t count_constellation(const GapCycle& cycle, const Constellation& s,
                                  const CensusOptions& options = {});

Census driving_terms_for_gap(const GapCycle& cycle, std::uint64_t g,
                             const CensusOptions& options = {});

Census driving_terms_for_constellation(const GapCycle& cycle, const Constellation& s,
                                       const CensusOptions& options = {});

struct CensusRow {
  Census census;
  std::size_t max_len = 0;
  // True when counts beyond max_len were dropped.
  bool truncated = false;

  std::vector<std::uint64_t> shown() const;
};

std::vector<CensusRow> census_table(const GapCycle& cycle, const std::vector<std::uint64_t>& gaps,
                                    std::size_t max_len, const CensusOptions& options = {});

CensusRow census_row(const GapCycle& cycle, const Constellation& s, std::size_t max_len,
                     const CensusOptions& options = {});

// Long format: target,j,count,normalized_ratio with the ratio as an exact
// fraction of phi_{j1+1}(N).
void write_census_csv(std::ostream& out, const std::vector<CensusRow>& rows);

// Wide format: one line per target, counts from j1 to the last shown length.
void write_census_wide(std::ostream& out, const std::vector<CensusRow>& rows);

std::string csv_target(const Constellation& s);

}  // namespace gapsieve
