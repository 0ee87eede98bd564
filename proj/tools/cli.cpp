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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>

#include "gapsieve/census.hpp"
#include "gapsieve/cycle.hpp"
#include "gapsieve/dynsys.hpp"
#include "gapsieve/error.hpp"
#include "gapsieve/polignac.hpp"
#include "gapsieve/primal.hpp"
#include "gapsieve/survival.hpp"
#include "reference_tables.hpp"

namespace gapsieve {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kAutoBuildLimit = 23;

struct Io {
  std::ostream& out;
  std::ostream& err;
  unsigned threads = 1;
};

std::optional<fs::path> cache_dir() {
  const char* dir = std::getenv("GAPSIEVE_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return fs::path(dir);
}

std::string cycle_label(const SquarefreeModulus& m) {
  if (m.is_primorial()) return "G(" + std::to_string(m.largest_factor()) + "#)";
  return "G(" + m.value().str() + ")";
}

// Existing file, then the cache directory, then g<p>.gapc built on demand.
GapCycle load_cycle(const std::string& spec) {
  const fs::path path(spec);
  if (fs::exists(path)) return read_cache(path);
  const auto dir = cache_dir();
  if (dir && path.is_relative() && fs::exists(*dir / path)) return read_cache(*dir / path);

  static const std::regex named(R"(g(\d+)\.gapc)");
  std::smatch match;
  const std::string name = path.filename().string();
  if (std::regex_match(name, match, named)) {
    const std::uint64_t p = std::stoull(match[1].str());
    if (is_prime(p) && p <= kAutoBuildLimit) {
      GapCycle cycle = build_primorial_cycle(p);
      if (dir) {
        fs::create_directories(*dir);
        write_cache(*dir / name, cycle);
      }
      return cycle;
    }
  }
  throw InvalidArgument("missing cycle file " + spec);
}

std::unique_ptr<std::ofstream> open_output(const std::string& path) {
  auto file = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*file) throw InvalidArgument("cannot write " + path);
  return file;
}

std::vector<Constellation> parse_constellations(const std::vector<std::string>& texts) {
  std::vector<Constellation> out;
  for (const auto& t : texts) out.push_back(Constellation::parse(t));
  return out;
}

void require_even_gaps(const std::vector<std::uint64_t>& gaps) {
  for (std::uint64_t g : gaps) {
    if (g < 2 || g % 2) throw InvalidArgument("gaps must be even and >= 2, got " + std::to_string(g));
  }
}

std::string fixed(long double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

// ---------------------------------------------------------------------------

struct BuildArgs {
  std::uint64_t prime = 0;
  std::string out;
  bool stream = false;
  std::uint64_t max_gaps = BuildOptions{}.max_in_memory_gaps;
};

int cmd_build(Io& io, const BuildArgs& a) {
  BuildOptions opts;
  opts.max_in_memory_gaps = a.max_gaps;
  if (a.stream) {
    if (a.out.empty()) throw InvalidArgument("--stream needs --out FILE");
    const std::uint64_t n = build_primorial_cycle_to_file(a.prime, a.out, opts);
    io.out << "wrote " << n << " gaps of G(" << a.prime << "#) to " << a.out << '\n';
    return 0;
  }
  const GapCycle cycle = build_primorial_cycle(a.prime, opts);
  if (!a.out.empty()) {
    write_cache(a.out, cycle);
    io.out << "wrote " << cycle.size() << " gaps of G(" << a.prime << "#) to " << a.out << '\n';
    return 0;
  }
  if (const auto dir = cache_dir()) {
    fs::create_directories(*dir);
    write_cache(*dir / ("g" + std::to_string(a.prime) + ".gapc"), cycle);
  }
  io.out << format_compact(cycle.gaps) << '\n';
  return 0;
}

struct VerifyArgs {
  std::string cycle;
  bool oracle = false;
};

int cmd_verify(Io& io, const VerifyArgs& a) {
  const GapCycle cycle = load_cycle(a.cycle);
  const CycleReport report = verify_cycle(cycle);
  bool ok = report.ok();
  io.out << "# " << cycle_label(cycle.modulus) << " gaps=" << cycle.size() << '\n';
  for (const auto& c : report.checks) {
    io.out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  if (a.oracle) {
    const GapCycle reference = oracle_cycle(cycle.modulus);
    const bool same = reference.gaps == cycle.gaps;
    ok = ok && same;
    io.out << (same ? "PASS " : "FAIL ") << "oracle: "
           << (same ? "matches gcd scan" : "differs from gcd scan") << '\n';
  }
  return ok ? 0 : 1;
}

struct CensusArgs {
  std::string cycle;
  std::vector<std::uint64_t> gaps;
  std::vector<std::string> constellations;
  std::size_t max_len = 100;
  std::string csv;
};

int cmd_census(Io& io, const CensusArgs& a) {
  if (a.gaps.empty() && a.constellations.empty()) {
    throw InvalidArgument("census needs --gap or --constellation");
  }
  require_even_gaps(a.gaps);
  const auto constellations = parse_constellations(a.constellations);
  const GapCycle cycle = load_cycle(a.cycle);
  const CensusOptions opts{io.threads};
  std::vector<CensusRow> rows = census_table(cycle, a.gaps, a.max_len, opts);
  for (const auto& s : constellations) rows.push_back(census_row(cycle, s, a.max_len, opts));

  io.out << "# census " << cycle_label(cycle.modulus) << " gaps=" << cycle.size()
         << " max_len=" << a.max_len << '\n';
  for (const auto& row : rows) {
    if (row.truncated) {
      io.out << "# " << row.census.target.to_string() << " truncated at length " << a.max_len
             << " (J=" << row.census.J() << ")\n";
    }
  }
  write_census_wide(io.out, rows);
  if (!a.csv.empty()) {
    auto file = open_output(a.csv);
    *file << "# census " << cycle_label(cycle.modulus) << '\n';
    write_census_csv(*file, rows);
  }
  return 0;
}

Constellation single_target(std::optional<std::uint64_t> gap, const std::string& constellation) {
  if (gap && !constellation.empty()) throw InvalidArgument("give --gap or --constellation, not both");
  if (gap) {
    require_even_gaps({*gap});
    return Constellation::single(*gap);
  }
  if (constellation.empty()) throw InvalidArgument("need --gap or --constellation");
  return Constellation::parse(constellation);
}

struct ModelArgs {
  std::string cycle;
  std::optional<std::uint64_t> gap;
  std::string constellation;
  std::uint64_t to_prime = 0;
  std::string csv;
};

int cmd_model(Io& io, const ModelArgs& a) {
  const Constellation s = single_target(a.gap, a.constellation);
  const GapCycle cycle = load_cycle(a.cycle);
  const Census census = driving_terms_for_constellation(cycle, s, CensusOptions{io.threads});
  PopulationVector v = from_census(census, Basis::raw);
  if (!is_prime(a.to_prime) || a.to_prime <= v.prime) {
    throw InvalidArgument("--to-prime must be a prime above " + std::to_string(v.prime));
  }
  std::unique_ptr<std::ofstream> file;
  if (!a.csv.empty()) file = open_output(a.csv);
  std::ostream& os = file ? *file : io.out;
  os << "# model " << s.to_string() << " from " << cycle_label(cycle.modulus) << " to "
     << a.to_prime << "# validity=" << to_string(validity(s, v.prime)) << '\n';
  os << "prime,j,raw_count,ratio\n";
  auto emit = [&](const PopulationVector& raw) {
    const PopulationVector norm = to_normalized(raw);
    for (Eigen::Index i = 0; i < raw.entries.size(); ++i) {
      os << raw.prime << ',' << raw.j1 + static_cast<std::size_t>(i) << ','
         << to_string(raw.entries(i)) << ',' << to_string(norm.entries(i)) << '\n';
    }
  };
  emit(v);
  for (std::uint64_t p = next_prime(v.prime); p <= a.to_prime; p = next_prime(p)) {
    v = step(v, p);
    emit(v);
  }
  return 0;
}

struct AsymptoticArgs {
  std::vector<std::uint64_t> gaps;
  std::optional<std::uint64_t> at_prime;
  std::string constellation;
  std::string cycle;
  bool decimal = false;
  std::string csv;
};

int cmd_asymptotic(Io& io, const AsymptoticArgs& a) {
  auto render = [&](const Rational& r) { return a.decimal ? to_decimal(r, 4) : to_string(r); };
  if (!a.constellation.empty()) {
    if (a.cycle.empty()) throw InvalidArgument("--constellation needs --cycle FILE");
    const Constellation s = Constellation::parse(a.constellation);
    const GapCycle cycle = load_cycle(a.cycle);
    const Census census = driving_terms_for_constellation(cycle, s, CensusOptions{io.threads});
    const PopulationVector v0 = from_census(census, Basis::normalized);
    const Validity valid = validity(s, v0.prime);
    io.out << "# s=" << s.to_string() << " p0=" << v0.prime << " j1=" << census.j1()
           << " J=" << census.J() << " validity=" << to_string(valid) << '\n';
    if (valid == Validity::invalid) {
      throw InvalidArgument("census at " + std::to_string(v0.prime) +
                            "# does not determine the asymptotic weight; use a larger cycle");
    }
    io.out << render(asymptotic_ratio(v0)) << '\n';
    return 0;
  }
  if (a.gaps.empty()) throw InvalidArgument("asymptotic needs --gap or --constellation");
  require_even_gaps(a.gaps);
  if (a.at_prime && !is_prime(*a.at_prime)) throw InvalidArgument("--at-prime must be prime");
  if (a.gaps.size() == 1 && a.csv.empty()) {
    const std::uint64_t g = a.gaps.front();
    io.out << render(a.at_prime ? partial_ratio(g, *a.at_prime) : hl_ratio(g)) << '\n';
    return 0;
  }
  std::unique_ptr<std::ofstream> file;
  if (!a.csv.empty()) file = open_output(a.csv);
  write_asymptotics_csv(file ? *file : io.out, a.gaps, a.at_prime);
  return 0;
}

struct RepetitionArgs {
  std::uint64_t gap = 0;
  std::size_t length = 1;
};

int cmd_repetition(Io& io, const RepetitionArgs& a) {
  const RepetitionSpec spec = repetition_weight(a.gap, a.length);
  io.out << "g=" << spec.g << " j1=" << spec.j1 << " p_k=" << spec.pk << " p_next=" << spec.pk_next
         << (spec.feasible ? " feasible" : " infeasible");
  if (spec.w_infinity) io.out << " w_inf=" << to_string(*spec.w_infinity);
  io.out << '\n';
  return 0;
}

struct AjkArgs {
  std::uint64_t p0 = 13;
  std::uint64_t pk = 0;
  std::size_t jmax = 2;
  std::uint64_t budget = EigenOptions{}.budget;
};

int cmd_ajk(Io& io, const AjkArgs& a) {
  if (!is_prime(a.p0)) throw InvalidArgument("--p0 must be prime");
  EigenOptions opts;
  opts.threads = io.threads;
  opts.budget = a.budget;
  const auto values = eigenvalue_products(a.p0, a.pk, a.jmax, opts);
  io.out << "# p0=" << a.p0 << " pk=" << a.pk << '\n' << "j,a_jk\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    io.out << i + 2 << ',' << fixed(values[i], 14) << '\n';
  }
  return 0;
}

struct CrossoverArgs {
  std::uint64_t gap_a = 0;
  std::uint64_t gap_b = 0;
  std::string cycle;
  bool estimate_prime = false;
  std::uint64_t anchor = 10'000'000;
};

int cmd_crossover(Io& io, const CrossoverArgs& a) {
  require_even_gaps({a.gap_a, a.gap_b});
  const GapCycle cycle = load_cycle(a.cycle);
  const CensusOptions copts{io.threads};
  const PopulationVector va = from_census(driving_terms_for_gap(cycle, a.gap_a, copts), Basis::normalized);
  const PopulationVector vb = from_census(driving_terms_for_gap(cycle, a.gap_b, copts), Basis::normalized);
  const auto root = crossover(va, vb);
  if (!root) {
    io.out << "no crossover in (0,1)\n";
    return 0;
  }
  io.out << "a2* = " << fixed(root->a2, 6) << '\n';
  if (a.estimate_prime) {
    EigenOptions eopts;
    eopts.threads = io.threads;
    const double lg = log10_prime_for_a2(va.prime, root->a2, a.anchor, eopts);
    io.out << "log10(p) ~ " << fixed(lg, 2) << '\n';
  }
  return 0;
}

struct AttritionArgs {
  std::string cycle;
  std::string csv;
};

int cmd_attrition(Io& io, const AttritionArgs& a) {
  const GapCycle cycle = load_cycle(a.cycle);
  const AttritionTrace trace = attrition(cycle);
  std::uint64_t max_gap = 0;
  for (auto g : trace.final_gaps) max_gap = std::max<std::uint64_t>(max_gap, g);
  io.out << "# attrition " << cycle_label(cycle.modulus) << " P=" << trace.P << '\n';
  io.out << "initial_gaps=" << cycle.size() << '\n';
  io.out << "final_gaps=" << trace.final_gaps.size() << '\n';
  io.out << "max_gap=" << max_gap << " first_created_at=" << trace.first_seen.at(max_gap) << '\n';
  if (trace.final_gaps.size() <= 64) {
    std::vector<Gap> shown(trace.final_gaps.begin(), trace.final_gaps.end());
    io.out << format_compact(shown) << '\n';
  }
  if (!a.csv.empty()) {
    auto file = open_output(a.csv);
    *file << "# attrition " << cycle_label(cycle.modulus) << " P=" << trace.P << '\n';
    write_attrition_csv(*file, trace);
  }
  return 0;
}

struct NaiveArgs {
  std::uint64_t pmin = 0;
  std::uint64_t pmax = 0;
  std::vector<std::uint64_t> gaps;
  std::vector<std::string> constellations;
  std::uint64_t budget = kDefaultSieveBudget;
  std::string csv;
};

int cmd_naive(Io& io, const NaiveArgs& a) {
  require_even_gaps(a.gaps);
  std::vector<Constellation> targets;
  for (std::uint64_t g : a.gaps) targets.push_back(Constellation::single(g));
  for (auto& s : parse_constellations(a.constellations)) targets.push_back(s);
  ErrorReportOptions opts;
  opts.sieve_budget = a.budget;
  opts.census.threads = io.threads;
  const auto rows = error_report(a.pmin, a.pmax, targets, opts);
  std::unique_ptr<std::ofstream> file;
  if (!a.csv.empty()) file = open_output(a.csv);
  std::ostream& os = file ? *file : io.out;
  os << "# naive-error pmin=" << a.pmin << " pmax=" << a.pmax << '\n';
  write_error_csv(os, rows);
  return 0;
}

// ---------------------------------------------------------------------------
// reproduce

struct Tally {
  std::ostream& out;
  int pass = 0;
  int fail = 0;

  void cell(const std::string& what, const std::string& expected, const std::string& got,
            reference::Provenance prov) {
    const bool ok = expected == got;
    (ok ? pass : fail)++;
    out << (ok ? "PASS " : "FAIL ") << what << " expected=" << expected << " got=" << got << " ["
        << reference::to_string(prov) << "]\n";
  }
};

GapCycle primorial_cycle_cached(std::uint64_t p) {
  return load_cycle("g" + std::to_string(p) + ".gapc");
}

void reproduce_table2(Tally& t, unsigned threads) {
  const GapCycle cycle = primorial_cycle_cached(13);
  for (const auto& row : reference::table2()) {
    const Census c = driving_terms_for_gap(cycle, row.g, CensusOptions{threads});
    const std::string g = "g=" + std::to_string(row.g);
    for (std::size_t j = 1; j <= std::max(row.counts.size(), c.J()); ++j) {
      const std::string expected = j <= row.counts.size() ? std::to_string(row.counts[j - 1]) : "0";
      t.cell("table2 " + g + " j=" + std::to_string(j), expected, std::to_string(c.at(j)),
             row.provenance);
    }
    t.cell("table2 " + g + " w_inf", row.w_infinity,
           to_string(asymptotic_ratio(from_census(c, Basis::normalized))), row.provenance);
  }
}

void reproduce_table3(Tally& t, unsigned threads) {
  const auto& ref = reference::table3();
  EigenOptions opts;
  opts.threads = threads;
  const auto values = eigenvalue_products(ref.p0, ref.pk, ref.a.size() + 1, opts);
  for (std::size_t i = 0; i < ref.a.size(); ++i) {
    const long double expected = std::stold(ref.a[i]);
    const bool close = std::fabs(values[i] - expected) <= 1e-11L;
    t.cell("table3 a_" + std::to_string(i + 2), ref.a[i], close ? ref.a[i] : fixed(values[i], 14),
           ref.provenance);
  }
}

void reproduce_table5(Tally& t, unsigned threads) {
  for (const auto& row : reference::table5()) {
    const Constellation s = Constellation::parse(row.s);
    const GapCycle cycle = primorial_cycle_cached(row.p0);
    const Census c = driving_terms_for_constellation(cycle, s, CensusOptions{threads});
    const std::string tag = "table5 s=" + row.s;
    t.cell(tag + " |s|", std::to_string(row.sum), std::to_string(s.sum()), row.provenance);
    t.cell(tag + " j1", std::to_string(row.j1), std::to_string(c.j1()), row.provenance);
    t.cell(tag + " J", std::to_string(row.J), std::to_string(c.J()), row.provenance);
    std::string expected_counts, got_counts;
    for (auto n : row.counts) expected_counts += (expected_counts.empty() ? "" : ",") + std::to_string(n);
    for (auto n : c.counts) got_counts += (got_counts.empty() ? "" : ",") + std::to_string(n);
    t.cell(tag + " n(p0)", expected_counts, got_counts, row.provenance);
    t.cell(tag + " validity", row.validity, to_string(validity(s, row.p0)), row.provenance);
    t.cell(tag + " w_inf", row.w_infinity,
           to_string(asymptotic_ratio(from_census(c, Basis::normalized))), row.provenance);
  }
}

void reproduce_fig5(Tally& t) {
  const auto& ref = reference::fig5();
  const GapCycle cycle = primorial_cycle_cached(ref.pk);
  const AttritionTrace trace = attrition(cycle);
  std::uint64_t max_gap = 0;
  for (auto g : trace.final_gaps) max_gap = std::max<std::uint64_t>(max_gap, g);
  const auto prov = reference::Provenance::published;
  t.cell("fig5 P", std::to_string(ref.P), std::to_string(trace.P), prov);
  t.cell("fig5 initial gap-2 count", std::to_string(ref.initial_twins),
         std::to_string(trace.initial.at(2)), prov);
  t.cell("fig5 final gap count", std::to_string(ref.final_count),
         std::to_string(trace.final_gaps.size()), prov);
  t.cell("fig5 max gap", std::to_string(ref.max_gap), std::to_string(max_gap), prov);
  t.cell("fig5 max gap first created at", std::to_string(ref.max_gap_first_prime),
         std::to_string(trace.first_seen.at(max_gap)), prov);
}

void reproduce_g7(Tally& t) {
  const GapCycle cycle = primorial_cycle_cached(7);
  const auto prov = reference::Provenance::published;
  t.cell("g7 cycle", reference::g7_display(), format_compact(cycle.gaps), prov);
  const AttritionTrace trace = attrition(cycle);
  t.cell("g7 P", "13", std::to_string(trace.P), prov);
  // Show 1..17 as a single leading gap.
  std::vector<Gap> shown;
  std::uint64_t lead = 0;
  std::size_t i = 0;
  while (i < trace.final_gaps.size() && lead < 16) lead += trace.final_gaps[i++];
  shown.push_back(static_cast<Gap>(lead));
  for (; i < trace.final_gaps.size(); ++i) shown.push_back(static_cast<Gap>(trace.final_gaps[i]));
  t.cell("g7 surviving sequence", reference::g7_attrition_display(), format_compact(shown), prov);
}

struct ReproduceArgs {
  std::string table;
  bool long_run = false;
};

int cmd_reproduce(Io& io, const ReproduceArgs& a) {
  Tally tally{io.out};
  if (a.table == "table2") {
    reproduce_table2(tally, io.threads);
  } else if (a.table == "table3") {
    if (!a.long_run) {
      throw CapacityError("table3 sieves to 10^12 and takes hours; rerun with --long");
    }
    reproduce_table3(tally, io.threads);
  } else if (a.table == "table5") {
    reproduce_table5(tally, io.threads);
  } else if (a.table == "fig5") {
    reproduce_fig5(tally);
  } else if (a.table == "g7-attrition") {
    reproduce_g7(tally);
  } else {
    throw InvalidArgument("unknown table " + a.table);
  }
  io.out << "# " << a.table << ": " << tally.pass << " pass, " << tally.fail << " fail\n";
  return tally.fail == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"gapsieve: cycles of gaps in Eratosthenes sieve"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  Io io{out, err};
  app.add_option("--threads", io.threads, "Worker threads for scans and sieves")
      ->check(CLI::Range(1u, 256u));

  std::function<int()> action;

  BuildArgs build;
  auto* c_build = app.add_subcommand("build", "Build G(p#) and print it or write a cache file");
  c_build->add_option("--prime", build.prime, "Largest prime of the primorial")->required();
  c_build->add_option("--out", build.out, "Cache file to write");
  c_build->add_flag("--stream", build.stream, "Stream the last stage to --out");
  c_build->add_option("--max-gaps", build.max_gaps, "In-memory gap limit");
  c_build->callback([&] { action = [&] { return cmd_build(io, build); }; });

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Check cycle invariants");
  c_verify->add_option("--cycle", verify.cycle, "Cycle cache file")->required();
  c_verify->add_flag("--oracle", verify.oracle, "Also compare against a gcd scan");
  c_verify->callback([&] { action = [&] { return cmd_verify(io, verify); }; });

  CensusArgs census;
  auto* c_census = app.add_subcommand("census", "Count gaps, constellations and driving terms");
  c_census->add_option("--cycle", census.cycle, "Cycle cache file")->required();
  c_census->add_option("--gap", census.gaps, "Target gaps (repeat or comma list)")->delimiter(',');
  c_census->add_option("--constellation", census.constellations, "Target constellation, e.g. 2,10,2");
  c_census->add_option("--max-len", census.max_len, "Longest driving term shown");
  c_census->add_option("--csv", census.csv, "Long-format CSV output");
  c_census->callback([&] { action = [&] { return cmd_census(io, census); }; });

  ModelArgs model;
  auto* c_model = app.add_subcommand("model", "Iterate the population model from a census");
  c_model->add_option("--cycle", model.cycle, "Cycle cache file for p0#")->required();
  c_model->add_option("--gap", model.gap, "Target gap");
  c_model->add_option("--constellation", model.constellation, "Target constellation");
  c_model->add_option("--to-prime", model.to_prime, "Final prime")->required();
  c_model->add_option("--csv", model.csv, "CSV output instead of stdout");
  c_model->callback([&] { action = [&] { return cmd_model(io, model); }; });

  AsymptoticArgs asym;
  auto* c_asym = app.add_subcommand("asymptotic", "Asymptotic ratio of a gap or constellation");
  c_asym->add_option("--gap", asym.gaps, "Gaps (repeat or comma list)")->delimiter(',');
  c_asym->add_option("--at-prime", asym.at_prime, "Partial product over factors <= P");
  c_asym->add_option("--constellation", asym.constellation, "Constellation, needs --cycle");
  c_asym->add_option("--cycle", asym.cycle, "Cycle cache file for the constellation census");
  c_asym->add_flag("--decimal", asym.decimal, "Render with 4 decimals");
  c_asym->add_option("--csv", asym.csv, "CSV output");
  c_asym->callback([&] { action = [&] { return cmd_asymptotic(io, asym); }; });

  RepetitionArgs rep;
  auto* c_rep = app.add_subcommand("repetition", "Feasibility and weight of g,g,...,g");
  c_rep->add_option("--gap", rep.gap, "Repeated gap")->required();
  c_rep->add_option("--length", rep.length, "Number of copies j1")->required();
  c_rep->callback([&] { action = [&] { return cmd_repetition(io, rep); }; });

  AjkArgs ajk;
  auto* c_ajk = app.add_subcommand("ajk", "Eigenvalue products a_j^k");
  c_ajk->add_option("--p0", ajk.p0, "Starting prime");
  c_ajk->add_option("--pk", ajk.pk, "Final prime bound")->required();
  c_ajk->add_option("--jmax", ajk.jmax, "Largest j");
  c_ajk->add_option("--budget", ajk.budget, "Widest range to sieve");
  c_ajk->callback([&] { action = [&] { return cmd_ajk(io, ajk); }; });

  CrossoverArgs cross;
  auto* c_cross = app.add_subcommand("crossover", "a_2 where gap A overtakes gap B");
  c_cross->add_option("--gap-a", cross.gap_a, "First gap")->required();
  c_cross->add_option("--gap-b", cross.gap_b, "Second gap")->required();
  c_cross->add_option("--cycle", cross.cycle, "Cycle cache file for p0#")->required();
  c_cross->add_flag("--estimate-prime", cross.estimate_prime, "Extrapolate the matching prime");
  c_cross->add_option("--anchor", cross.anchor, "Sieve bound used before extrapolating");
  c_cross->callback([&] { action = [&] { return cmd_crossover(io, cross); }; });

  AttritionArgs attr;
  auto* c_attr = app.add_subcommand("attrition", "Continue sieving inside one cycle");
  c_attr->add_option("--cycle", attr.cycle, "Cycle cache file")->required();
  c_attr->add_option("--csv", attr.csv, "Histogram CSV output");
  c_attr->callback([&] { action = [&] { return cmd_attrition(io, attr); }; });

  NaiveArgs naive;
  auto* c_naive = app.add_subcommand("naive-error", "Naive estimates against real prime gaps");
  c_naive->add_option("--pmin", naive.pmin, "Smallest p_k")->required();
  c_naive->add_option("--pmax", naive.pmax, "Largest p_k")->required();
  c_naive->add_option("--gaps", naive.gaps, "Gaps (comma list)")->delimiter(',');
  c_naive->add_option("--constellation", naive.constellations, "Constellation targets");
  c_naive->add_option("--budget", naive.budget, "Largest integer to sieve");
  c_naive->add_option("--csv", naive.csv, "CSV output instead of stdout");
  c_naive->callback([&] { action = [&] { return cmd_naive(io, naive); }; });

  ReproduceArgs repro;
  auto* c_repro = app.add_subcommand("reproduce", "Compare against embedded reference values");
  c_repro->add_option("table", repro.table, "table2 | table3 | table5 | fig5 | g7-attrition")
      ->required()
      ->check(CLI::IsMember({"table2", "table3", "table5", "fig5", "g7-attrition"}));
  c_repro->add_flag("--long", repro.long_run, "Allow multi-hour jobs");
  c_repro->callback([&] { action = [&] { return cmd_reproduce(io, repro); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  try {
    return action ? action() : 1;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"gapsieve"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gapsieve
