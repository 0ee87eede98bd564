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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"

using namespace gapsieve;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("gapsieve_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_CASE("build prints compact cycles") {
  CHECK(run({"build", "--prime", "5"}).out == "64242462\n");
  CHECK(run({"build", "--prime", "3"}).out == "42\n");
  CHECK(run({"build", "--prime", "7"}).out ==
        "10,242462642466264264684242486462462664246264242,10,2\n");
}

TEST_CASE("build writes cache files, streaming or not") {
  const fs::path dir = scratch();
  const auto a = (dir / "a.gapc").string();
  const auto b = (dir / "b.gapc").string();
  CHECK(run({"build", "--prime", "11", "--out", a}).code == 0);
  CHECK(run({"build", "--prime", "11", "--out", b, "--stream"}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(run({"build", "--prime", "11", "--stream"}).code == 1);
  CHECK(run({"build", "--prime", "13", "--max-gaps", "100"}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("verify") {
  const fs::path dir = scratch();
  const auto f = (dir / "g7.gapc").string();
  run({"build", "--prime", "7", "--out", f});
  const Run r = run({"verify", "--cycle", f, "--oracle"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS central-run: j = 3, run 8,4,2,4,2,4,8") != std::string::npos);
  CHECK(run({"verify", "--cycle", (dir / "nope.gapc").string()}).code == 1);
  fs::remove_all(dir);
}

TEST_CASE("census rows") {
  const Run r = run({"census", "--cycle", "g13.gapc", "--gap", "16", "--max-len", "9"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "16,12,252,750,436,35"));
  const Run many = run({"census", "--cycle", "g13.gapc", "--gap", "2,4,32", "--max-len", "9"});
  CHECK(has_line(many.out, "2,1485"));
  CHECK(has_line(many.out, "32,0,0,0,12,200,558,523,172,20"));
  const Run s = run({"census", "--cycle", "g7.gapc", "--constellation", "2,10,2"});
  CHECK(has_line(s.out, "\"2,10,2\",2,6"));
  CHECK(run({"census", "--cycle", "g7.gapc", "--constellation", "2,x"}).code == 1);
  CHECK(run({"census", "--cycle", "g7.gapc"}).code == 1);
}

TEST_CASE("census CSV is byte-stable") {
  const fs::path dir = scratch();
  const auto a = (dir / "a.csv").string();
  const auto b = (dir / "b.csv").string();
  run({"census", "--cycle", "g13.gapc", "--gap", "2,6,30", "--csv", a});
  run({"--threads", "3", "census", "--cycle", "g13.gapc", "--gap", "2,6,30", "--csv", b});
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find("30,8,90,2/33\n") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("GAPSIEVE_CACHE_DIR stores built cycles") {
  const fs::path dir = scratch() / "cache";
  ::setenv("GAPSIEVE_CACHE_DIR", dir.c_str(), 1);
  CHECK(run({"census", "--cycle", "g11.gapc", "--gap", "2"}).code == 0);
  CHECK(fs::exists(dir / "g11.gapc"));
  CHECK(run({"verify", "--cycle", "g11.gapc"}).code == 0);
  ::unsetenv("GAPSIEVE_CACHE_DIR");
  fs::remove_all(dir.parent_path());
}

TEST_CASE("asymptotic") {
  CHECK(run({"asymptotic", "--gap", "30"}).out == "8/3\n");
  CHECK(run({"asymptotic", "--gap", "78", "--decimal"}).out == "2.1818\n");
  CHECK(run({"asymptotic", "--gap", "74", "--at-prime", "31"}).out == "1\n");
  const Run s = run({"asymptotic", "--constellation", "2,10,2,10,2", "--cycle", "g13.gapc"});
  CHECK(s.code == 0);
  CHECK(has_line(s.out, "144/35"));
  const Run csv = run({"asymptotic", "--gap", "74,78", "--at-prime", "31"});
  CHECK(has_line(csv.out, "78,13,2.1818,2.1818,true"));
  CHECK(run({"asymptotic", "--gap", "7"}).code == 1);
}

TEST_CASE("repetition") {
  CHECK(run({"repetition", "--gap", "6", "--length", "2"}).out ==
        "g=6 j1=2 p_k=3 p_next=5 feasible w_inf=2\n");
  CHECK(run({"repetition", "--gap", "2", "--length", "2"}).out ==
        "g=2 j1=2 p_k=2 p_next=3 infeasible\n");
}

TEST_CASE("model") {
  const Run r = run({"model", "--cycle", "g5.gapc", "--gap", "6", "--to-prime", "11"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "prime,j,raw_count,ratio"));
  CHECK(has_line(r.out, "7,1,14,14/15"));
  CHECK(has_line(r.out, "11,1,142,142/135"));
  CHECK(run({"model", "--cycle", "g5.gapc", "--gap", "6", "--to-prime", "5"}).code == 1);
}

TEST_CASE("ajk and crossover") {
  const Run a = run({"ajk", "--p0", "13", "--pk", "17", "--jmax", "3"});
  CHECK(has_line(a.out, "2,0.93333333333333"));
  CHECK(run({"ajk", "--p0", "13", "--pk", "100000", "--budget", "10"}).code == 2);
  const Run c = run({"crossover", "--gap-a", "30", "--gap-b", "6", "--cycle", "g13.gapc"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("a2* = 0.06", 0) == 0);
  CHECK(run({"crossover", "--gap-a", "6", "--gap-b", "6", "--cycle", "g13.gapc"}).out ==
        "no crossover in (0,1)\n");
}

TEST_CASE("attrition and naive-error") {
  const Run a = run({"attrition", "--cycle", "g7.gapc"});
  CHECK(has_line(a.out, "final_gaps=43"));
  CHECK(has_line(a.out, "10,2424626424662642646842424,14,462,10,2664662,10,242,12"));
  const Run n = run({"naive-error", "--pmin", "13", "--pmax", "13", "--gaps", "2,4"});
  CHECK(n.code == 0);
  CHECK(n.out.find("13,17,17,289,2,1485,") != std::string::npos);
  CHECK(run({"naive-error", "--pmin", "13", "--pmax", "29", "--gaps", "2"}).code == 2);
}

TEST_CASE("reproduce") {
  const Run t2 = run({"reproduce", "table2"});
  CHECK(t2.code == 0);
  CHECK(t2.out.find("FAIL") == std::string::npos);
  CHECK(run({"reproduce", "table5"}).code == 0);
  CHECK(run({"reproduce", "g7-attrition"}).code == 0);
  const Run t3 = run({"reproduce", "table3"});
  CHECK(t3.code == 2);
  CHECK(t3.err.find("--long") != std::string::npos);
  CHECK(run({"reproduce", "table9"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  const Run help = run({"census", "--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("--max-len") != std::string::npos);
  CHECK(help.out.find("100") != std::string::npos);
}
