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
#include <string>
#include <vector>

namespace gapsieve::reference {

enum class Provenance { published, derived };

inline const char* to_string(Provenance p) {
  return p == Provenance::published ? "published" : "derived";
}

// Gap populations and driving terms at 13#, lengths from 1.
struct Table2Row {
  std::uint64_t g;
  std::vector<std::uint64_t> counts;
  std::string w_infinity;
  Provenance provenance;
};

inline const std::vector<Table2Row>& table2() {
  static const std::vector<Table2Row> rows = {
      {2, {1485}, "1", Provenance::published},
      {4, {1485}, "1", Provenance::published},
      {6, {1690, 1280}, "2", Provenance::published},
      {8, {394, 902, 189}, "1", Provenance::published},
      {10, {438, 1164, 378}, "4/3", Provenance::published},
      {12, {188, 1276, 1314, 192}, "2", Provenance::published},
      {14, {58, 536, 900, 288}, "6/5", Provenance::published},
      {16, {12, 252, 750, 436, 35}, "1", Provenance::published},
      {18, {8, 256, 1224, 1272, 210}, "2", Provenance::published},
      {20, {0, 24, 348, 960, 600, 48}, "4/3", Provenance::published},
      {22, {2, 48, 312, 784, 504}, "10/9", Provenance::published},
      {24, {0, 20, 258, 928, 1260, 504}, "2", Provenance::published},
      {26, {0, 2, 40, 322, 724, 448, 84}, "12/11", Provenance::published},
      {28, {0, 0, 36, 344, 794, 528, 80}, "6/5", Provenance::published},
      {30, {0, 0, 10, 194, 1066, 1784, 816, 90}, "8/3", Provenance::published},
      {32, {0, 0, 0, 12, 200, 558, 523, 172, 20}, "1", Provenance::published},
  };
  return rows;
}

// a_j^k for p0 = 13, pk = 999999999989, j = 2..9.
struct Table3 {
  std::uint64_t p0;
  std::uint64_t pk;
  std::vector<std::string> a;
  Provenance provenance;
};

inline const Table3& table3() {
  static const Table3 t = {13,
                           999999999989ULL,
                           {"0.10206751799779", "0.01019996897567", "0.00099592269918",
                            "0.00009477093531", "0.00000876214163", "0.00000078408120",
                            "0.00000006757562", "0.00000000557284"},
                           Provenance::published};
  return t;
}

struct Table5Row {
  std::string s;
  std::uint64_t sum;
  std::size_t j1;
  std::size_t J;
  std::uint64_t p0;
  std::vector<std::uint64_t> counts;
  std::string w_infinity;
  std::string validity;
  Provenance provenance;
};

inline const std::vector<Table5Row>& table5() {
  static const std::vector<Table5Row> rows = {
      {"2,4,2", 8, 3, 3, 5, {1}, "1", "full", Provenance::published},
      {"4,2,4", 10, 3, 3, 5, {2}, "2", "full", Provenance::published},
      {"2,10,2", 14, 3, 4, 7, {2, 6}, "8/3", "full", Provenance::published},
      {"4,2,4,2,4", 16, 5, 5, 7, {1}, "1", "full", Provenance::published},
      {"2,10,2,10,2", 26, 5, 7, 13, {52, 44, 48}, "144/35", "full", Provenance::published},
      {"2,10,2,10,2,4,2,10,2,10,2", 56, 11, 13, 13, {2, 10, 12}, "24", "asymptotic-only",
       Provenance::published},
      {"6,6", 12, 2, 4, 5, {0, 2, 2}, "2", "full", Provenance::published},
      {"12,12", 24, 2, 6, 11, {0, 2, 20, 48, 58}, "2", "full", Provenance::published},
      {"6,6,6", 18, 3, 5, 7, {0, 4, 2}, "2", "full", Provenance::published},
  };
  return rows;
}

// Attrition of G(13#) by 17..173.
struct Fig5 {
  std::uint64_t pk;
  std::uint64_t P;
  std::uint64_t initial_twins;
  std::uint64_t final_count;
  std::uint64_t max_gap;
  std::uint64_t max_gap_first_prime;
};

inline const Fig5& fig5() {
  static const Fig5 f = {13, 173, 1485, 3245, 52, 73};
  return f;
}

// G(7#) after sieving by 11 and 13, read from 1 with 1..17 shown as one gap.
inline const std::string& g7_attrition_display() {
  static const std::string s = "16,24626424662642646842424,14,462,10,2664662,10,242,12";
  return s;
}

inline const std::string& g7_display() {
  static const std::string s = "10,242462642466264264684242486462462664246264242,10,2";
  return s;
}

}  // namespace gapsieve::reference
