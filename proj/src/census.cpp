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

#include "gapsieve/census.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <thread>

#include "gapsieve/error.hpp"

namespace gapsieve {

namespace {

using Counts = std::vector<std::uint64_t>;

void bump(Counts& counts, std::size_t len) {
  if (counts.size() <= len) counts.resize(len + 1, 0);
  ++counts[len];
}

// Runs fn(begin, end, local_counts) over chunks of start positions and sums
// the per-length counts.
template <class Fn>
Counts chunked(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<Counts> partial(threads);
  if (threads == 1) {
    fn(std::size_t{0}, n, partial[0]);
  } else {
    std::vector<std::thread> pool;
    const std::size_t step = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t lo = std::min(n, t * step);
      const std::size_t hi = std::min(n, lo + step);
      pool.emplace_back([&, t, lo, hi] { fn(lo, hi, partial[t]); });
    }
    for (auto& th : pool) th.join();
  }
  Counts total;
  for (const auto& c : partial) {
    if (total.size() < c.size()) total.resize(c.size(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) total[i] += c[i];
  }
  return total;
}

Census make_census(const GapCycle& cycle, const Constellation& s, const Counts& by_length) {
  Census census{s, cycle.modulus, {}};
  const std::size_t j1 = s.length();
  std::size_t last = j1;
  for (std::size_t j = j1; j < by_length.size(); ++j) {
    if (by_length[j] != 0) last = j;
  }
  census.counts.assign(last - j1 + 1, 0);
  for (std::size_t j = j1; j <= last && j < by_length.size(); ++j) census.counts[j - j1] = by_length[j];
  return census;
}

}  // namespace

Constellation::Constellation(std::vector<std::uint64_t> gaps) : gaps_(std::move(gaps)) {
  if (gaps_.empty()) throw InvalidArgument("constellation needs at least one gap");
  for (std::uint64_t g : gaps_) {
    if (g == 0 || g % 2 != 0) {
      throw InvalidArgument("constellation gaps must be positive and even, got " +
                            std::to_string(g));
    }
    sum_ += g;
  }
}

Constellation Constellation::parse(std::string_view text) {
  std::vector<std::uint64_t> gaps;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || end != token.data() + token.size()) {
      throw InvalidArgument("malformed constellation '" + std::string(text) + "'");
    }
    gaps.push_back(value);
    pos = comma + 1;
  }
  return Constellation(std::move(gaps));
}

Constellation Constellation::reversed() const {
  return Constellation(std::vector<std::uint64_t>(gaps_.rbegin(), gaps_.rend()));
}

std::string Constellation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < gaps_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(gaps_[i]);
  }
  return out;
}

std::uint64_t Census::at(std::size_t j) const {
  if (j < j1() || j > J()) return 0;
  return counts[j - j1()];
}

std::uint64_t Census::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t count_gap(const GapCycle& cycle, std::uint64_t g) {
  if (g > 0xFFFF) return 0;
  return static_cast<std::uint64_t>(
      std::count(cycle.gaps.begin(), cycle.gaps.end(), static_cast<Gap>(g)));
}

std::uint64_t count_constellation(const GapCycle& cycle, const Constellation& s,
                                  const CensusOptions& options) {
  const auto& gaps = cycle.gaps;
  const std::size_t m = gaps.size();
  const auto& target = s.gaps();
  const Counts counts = chunked(m, options.threads, [&](std::size_t lo, std::size_t hi, Counts& local) {
    for (std::size_t i = lo; i < hi; ++i) {
      bool match = true;
      for (std::size_t k = 0; k < target.size() && match; ++k) {
        match = gaps[(i + k) % m] == target[k];
      }
      if (match) bump(local, 0);
    }
  });
  return counts.empty() ? 0 : counts[0];
}

// Two-pointer scan: for each start i the window [i, end) is the shortest with
// sum >= g. Windows are cyclic and may wrap more than once.
Census driving_terms_for_gap(const GapCycle& cycle, std::uint64_t g, const CensusOptions& options) {
  const Constellation s = Constellation::single(g);
  const auto& gaps = cycle.gaps;
  const std::size_t m = gaps.size();
  const Counts counts = chunked(m, options.threads, [&](std::size_t lo, std::size_t hi, Counts& local) {
    if (lo >= hi) return;
    std::size_t end = lo;
    std::uint64_t sum = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      while (sum < g) sum += gaps[end++ % m];
      if (sum == g) bump(local, end - i);
      sum -= gaps[i];
    }
  });
  return make_census(cycle, s, counts);
}

// Per start, walk forward and require the running sum to land exactly on
// every boundary g_1, g_1+g_2, ..., |s|.
Census driving_terms_for_constellation(const GapCycle& cycle, const Constellation& s,
                                       const CensusOptions& options) {
  if (s.is_single()) {
    Census census = driving_terms_for_gap(cycle, s.sum(), options);
    return census;
  }
  std::vector<std::uint64_t> bounds;
  std::partial_sum(s.gaps().begin(), s.gaps().end(), std::back_inserter(bounds));
  const auto& gaps = cycle.gaps;
  const std::size_t m = gaps.size();
  const Counts counts = chunked(m, options.threads, [&](std::size_t lo, std::size_t hi, Counts& local) {
    for (std::size_t i = lo; i < hi; ++i) {
      std::uint64_t sum = 0;
      std::size_t len = 0;
      bool ok = true;
      for (std::uint64_t bound : bounds) {
        while (sum < bound) sum += gaps[(i + len++) % m];
        if (sum != bound) {
          ok = false;
          break;
        }
      }
      if (ok) bump(local, len);
    }
  });
  return make_census(cycle, s, counts);
}

std::vector<std::uint64_t> CensusRow::shown() const {
  std::vector<std::uint64_t> out;
  for (std::size_t j = census.j1(); j <= std::min(census.J(), max_len); ++j) out.push_back(census.at(j));
  return out;
}

CensusRow census_row(const GapCycle& cycle, const Constellation& s, std::size_t max_len,
                     const CensusOptions& options) {
  CensusRow row{driving_terms_for_constellation(cycle, s, options), max_len, false};
  for (std::size_t j = max_len + 1; j <= row.census.J(); ++j) {
    if (row.census.at(j) != 0) row.truncated = true;
  }
  return row;
}

std::vector<CensusRow> census_table(const GapCycle& cycle, const std::vector<std::uint64_t>& gaps,
                                    std::size_t max_len, const CensusOptions& options) {
  std::vector<CensusRow> rows;
  for (std::uint64_t g : gaps) rows.push_back(census_row(cycle, Constellation::single(g), max_len, options));
  return rows;
}

std::string csv_target(const Constellation& s) {
  return s.is_single() ? s.to_string() : "\"" + s.to_string() + "\"";
}

void write_census_csv(std::ostream& out, const std::vector<CensusRow>& rows) {
  out << "target,j,count,normalized_ratio\n";
  for (const auto& row : rows) {
    const auto& c = row.census;
    const Rational norm = to_rational(phi_i(c.j1() + 1, c.modulus));
    const auto shown = row.shown();
    for (std::size_t k = 0; k < shown.size(); ++k) {
      out << csv_target(c.target) << ',' << c.j1() + k << ',' << shown[k] << ','
          << to_string(Rational(shown[k]) / norm) << '\n';
    }
  }
}

void write_census_wide(std::ostream& out, const std::vector<CensusRow>& rows) {
  for (const auto& row : rows) {
    out << csv_target(row.census.target);
    for (std::uint64_t n : row.shown()) out << ',' << n;
    out << '\n';
  }
}

}  // namespace gapsieve
