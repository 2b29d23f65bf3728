// Acceptance gate: ten end-to-end criteria, one pass/fail line each.  Exit 0
// only when every criterion holds inside its wall-clock budget.  argv[1] is
// the path of the command-line binary (used by the rerun-determinism check).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "critlang/accum.hpp"
#include "critlang/bounds.hpp"
#include "critlang/codes.hpp"
#include "critlang/complexity.hpp"
#include "critlang/fractal.hpp"
#include "critlang/fss.hpp"
#include "critlang/ising.hpp"
#include "critlang/statmech.hpp"

#include "json.hpp"

namespace fs = std::filesystem;
using namespace critlang;
using nlohmann::json;

namespace {

struct Result {
  bool ok = true;
  std::string detail;
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return xs;
}

Word bit_word(std::uint64_t index, int bits) {
  std::vector<std::uint8_t> letters(static_cast<std::size_t>(bits));
  for (int b = 0; b < bits; ++b)
    letters[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>((index >> b) & 1u);
  return Word(letters);
}

Code rate25_code() {
  return linear_code(2, {{1, 0, 1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 0, 1, 0, 1}});
}

Code rate50_code() {
  return linear_code(2, {{1, 0, 0, 0, 1, 1, 0, 1},
                         {0, 1, 0, 0, 1, 0, 1, 1},
                         {0, 0, 1, 0, 0, 1, 1, 1},
                         {0, 0, 0, 1, 1, 1, 1, 0}});
}

Code rate75_code() {
  return linear_code(2, {{1, 0, 0, 0, 0, 0, 1, 1},
                         {0, 1, 0, 0, 0, 0, 1, 0},
                         {0, 0, 1, 0, 0, 0, 0, 1},
                         {0, 0, 0, 1, 0, 0, 1, 1},
                         {0, 0, 0, 0, 1, 0, 1, 0},
                         {0, 0, 0, 0, 0, 1, 0, 1}});
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// --- C1: normalized box dimension reproduces the transmission rate ---------

Result c1_rate_dimension() {
  std::vector<Code> codes{rate25_code(), rate50_code(), rate75_code(),
                          random_code(3, 4, 9, 31), random_code(5, 3, 5, 32),
                          linear_code(3, {{1, 1, 0}, {0, 1, 1}})};
  double worst = 0.0;
  for (const auto& c : codes) {
    auto est = box_dimension(c, {1, 2, 3});
    worst = std::max(worst, std::abs(est.normalized - c.rate()));
  }
  return {worst <= 1e-12, "max |dim - rate| = " + num(worst) + " over " +
                              std::to_string(codes.size()) + " codes"};
}

// --- C2: closed-form partition function vs direct evaluation ---------------

Result c2_partition_closed_form() {
  double worst = 0.0;
  int divergent_checked = 0;
  for (const Code& code : {rate50_code(), random_code(3, 4, 9, 31)}) {
    auto wa = code_weights(code);
    double r = code.rate();
    for (double beta : linspace(1.04 * r, 3.0 * r, 50)) {
      auto direct = partition_function(wa, beta);
      auto closed = partition_function_closed(code.q(), code.n(), r, beta);
      if (direct.divergent() || closed.divergent())
        return {false, "unexpected divergence at beta = " + num(beta)};
      worst = std::max(worst, std::abs(*direct.z - *closed.z));
    }
    for (double beta : linspace(0.05 * r, r, 20)) {
      auto direct = partition_function(wa, beta);
      auto closed = partition_function_closed(code.q(), code.n(), r, beta);
      if (!direct.divergent() || !closed.divergent())
        return {false, "missing divergence at beta = " + num(beta) + " <= R"};
      ++divergent_checked;
    }
  }
  return {worst <= 1e-12, "max |Z - Z_closed| = " + num(worst) + ", " +
                              std::to_string(divergent_checked) +
                              " divergent points below R"};
}

// --- C3: rescaled weights satisfy Keane and critically at beta = R ---------

Result c3_keane_rescale() {
  SplitMix64 rng(303);
  double worst_residual = 0.0, worst_beta = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t m = 32 + rng.uniform_below(65);
    double r = 0.5 + rng.uniform();
    std::vector<Word> words;
    std::vector<double> lambdas;
    for (std::size_t i = 0; i < m; ++i) {
      words.push_back(bit_word(i, 17));
      lambdas.push_back(0.5 + 1.5 * rng.uniform());
    }
    auto rescaled = rescale_to_keane(WeightAssignment(words, lambdas, r));
    worst_residual = std::max(worst_residual, std::abs(keane_residual(rescaled)));
    auto crit = critical_beta(rescaled);
    worst_beta = std::max(worst_beta, std::abs(crit.beta_star - r));
  }
  bool ok = worst_residual <= 1e-12 && worst_beta <= 1e-8;
  return {ok, "max residual " + num(worst_residual) + ", max |beta* - R| " +
                  num(worst_beta) + " over 100 assignments"};
}

// --- C4: complexity proxy tracks the rate on codeword concatenations -------

Result c4_proxy_tracks_rate() {
  struct Case {
    Code code;
    double rate;
  };
  std::vector<Case> cases{{rate25_code(), 0.25}, {rate50_code(), 0.5},
                          {rate75_code(), 0.75}};
  SplitMix64 rng(404);
  std::string detail;
  bool ok = true;
  for (const auto& cs : cases) {
    const int reps = 6, blocks = 4096;
    double mean = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
      std::vector<std::uint8_t> letters;
      letters.reserve(static_cast<std::size_t>(blocks) * 8);
      for (int b = 0; b < blocks; ++b) {
        const Word& w = cs.code.words()[rng.uniform_below(cs.code.size())];
        letters.insert(letters.end(), w.letters().begin(), w.letters().end());
      }
      mean += proxy_complexity(Word(letters), 2).kappa;
    }
    mean /= reps;
    ok = ok && std::abs(mean - cs.rate) <= 0.1;
    if (!detail.empty()) detail += ", ";
    detail += "R=" + num(cs.rate) + ": kappa " + num(mean);
  }
  return {ok, detail};
}

// --- C5: 2d criticality -----------------------------------------------------

Result c5_ising_2d() {
  FssConfig cfg;
  cfg.algorithm = Algorithm::wolff;
  cfg.thermalization = 2000;
  cfg.measurements = 16000;
  cfg.stride = 2;
  cfg.blocks = 40;
  std::vector<CellSpec> specs;
  for (int L : {8, 16, 32})
    for (double t : {2.23, 2.25, 2.27, 2.29, 2.31}) specs.push_back({2, L, t});
  auto cells = run_cells(specs, cfg, 4242);
  auto crossing = binder_crossing(cells);
  auto fit = estimate_nu(cells, crossing);

  FssConfig ccfg = cfg;
  ccfg.measurements = 16000;
  auto corr = energy_correlator(2, 64, 2.2691853, ccfg, {2, 3, 4, 5, 6}, 4242);

  bool ok = std::abs(crossing.t_c - 2.2691853) <= 0.02 * 2.2691853 &&
            std::abs(fit.nu - 1.0) <= 0.15 && corr.reliable &&
            std::abs(corr.exponent - 2.0) <= 0.3;
  return {ok, "T_c " + num(crossing.t_c) + " (ref 2.2691853), nu " + num(fit.nu) +
                  " +/- " + num(fit.nu_err) + ", correlator exponent " +
                  num(corr.exponent) + " +/- " + num(corr.exponent_err) +
                  (corr.reliable ? "" : " (unreliable)")};
}

// --- C6: 3d criticality and the Tsirelson-adjacent bound --------------------

Result c6_ising_3d() {
  FssConfig cfg;
  cfg.algorithm = Algorithm::wolff;
  cfg.thermalization = 2000;
  cfg.measurements = 16000;
  cfg.stride = 2;
  cfg.blocks = 40;
  std::vector<CellSpec> specs;
  for (int L : {4, 6, 8, 12, 16})
    for (double t : {4.42, 4.46, 4.50, 4.54, 4.58, 4.62}) specs.push_back({3, L, t});
  auto cells = run_cells(specs, cfg, 4343);
  auto crossing = binder_crossing(cells);
  auto fit = estimate_nu(cells, crossing);
  auto bound = bound_report(3, fit.nu, fit.nu_err, "simulated");

  bool nu_ok = std::abs(fit.nu - 0.63) <= 0.08;
  bool band_ok = bound.two_delta - bound.two_delta_err <= 2.82537 &&
                 2.82537 <= bound.two_delta + bound.two_delta_err;
  return {nu_ok && band_ok, "nu " + num(fit.nu) + " +/- " + num(fit.nu_err) +
                                " (ref 0.63), 2*Delta " + num(bound.two_delta) +
                                " +/- " + num(bound.two_delta_err) +
                                " (band must contain 2.82537)"};
}

// --- C7: 4d criticality reaches the PR-box value ----------------------------

Result c7_ising_4d() {
  FssConfig cfg;
  cfg.algorithm = Algorithm::wolff;
  cfg.thermalization = 2000;
  cfg.measurements = 16000;
  cfg.stride = 2;
  cfg.blocks = 40;
  std::vector<CellSpec> specs;
  for (int L : {3, 4, 5, 6})
    for (double t : {6.50, 6.56, 6.62, 6.68, 6.74, 6.80}) specs.push_back({4, L, t});
  auto cells = run_cells(specs, cfg, 4444);
  auto crossing = binder_crossing(cells);
  auto fit = estimate_nu(cells, crossing);
  auto bound = bound_report(4, fit.nu, fit.nu_err, "simulated");

  bool nu_ok = std::abs(fit.nu - 0.5) <= 0.12;
  bool bound_ok = std::abs(bound.two_delta - 4.0) <=
                  std::max(2.0 * bound.two_delta_err, 0.25);
  return {nu_ok && bound_ok, "nu " + num(fit.nu) + " +/- " + num(fit.nu_err) +
                                 " (ref 0.5), 2*Delta " + num(bound.two_delta) +
                                 " +/- " + num(bound.two_delta_err) +
                                 " (must be consistent with 4)"};
}

// --- C8: exact anchors of the bound map -------------------------------------

Result c8_bound_anchors() {
  auto d2 = bound_report_exact(2, Rational(1, 1), "exact");
  auto d4 = bound_report_exact(4, Rational(1, 2), "exact");
  bool anchors = d2.exact && d2.two_delta_exact == Rational(2, 1) &&
                 d2.s_value == 3.0 && d4.exact &&
                 d4.two_delta_exact == Rational(4, 1) && d4.s_value == 4.0;

  auto d3 = bound_report(3, 0.62999, 0.0, "literature");
  bool mid = std::abs(d3.two_delta - 2.82537) <= 5e-5 &&
             std::abs(d3.gap_tsirelson - 0.0031) <= 0.0003 &&
             std::abs(d3.s_value - 3.41267) <= 0.00013;
  return {anchors && mid, "2*Delta: d=2 " + d2.two_delta_exact->str() + ", d=4 " +
                              d4.two_delta_exact->str() + ", d=3 " +
                              num(d3.two_delta) + " (gap to Tsirelson " +
                              num(d3.gap_tsirelson) + ", S " + num(d3.s_value) + ")"};
}

// --- C9: metropolis samples the exact 2x2 Boltzmann distribution ------------

Result c9_metropolis_boltzmann() {
  const double t = 2.0;
  NeighborTable nb(2, 2);
  SpinLattice lat = SpinLattice::ordered(2, 2);

  // exact distribution over the 16 states
  std::vector<double> exact(16);
  double z = 0.0;
  for (int s = 0; s < 16; ++s) {
    for (int i = 0; i < 4; ++i)
      lat.spins[static_cast<std::size_t>(i)] = (s >> i) & 1 ? 1 : -1;
    exact[static_cast<std::size_t>(s)] =
        std::exp(-static_cast<double>(ising_energy(lat, nb)) / t);
    z += exact[static_cast<std::size_t>(s)];
  }
  for (double& p : exact) p /= z;

  const int n_samples = 400000, stride = 5, n_blocks = 200;
  const int block_len = n_samples / n_blocks;
  SplitMix64 rng(909);
  for (int i = 0; i < 4; ++i) lat.spins[static_cast<std::size_t>(i)] = 1;
  for (int sweep = 0; sweep < 2000; ++sweep) metropolis_sweep(lat, nb, t, rng);

  // per-block occupancy of each state; blocks are long next to the
  // autocorrelation time, so the blocked sigma is honest
  std::vector<std::vector<double>> block_freq(
      static_cast<std::size_t>(n_blocks), std::vector<double>(16, 0.0));
  for (int b = 0; b < n_blocks; ++b)
    for (int i = 0; i < block_len; ++i) {
      for (int s = 0; s < stride; ++s) metropolis_sweep(lat, nb, t, rng);
      int state = 0;
      for (int k = 0; k < 4; ++k)
        if (lat.spins[static_cast<std::size_t>(k)] > 0) state |= 1 << k;
      block_freq[static_cast<std::size_t>(b)][static_cast<std::size_t>(state)] +=
          1.0 / block_len;
    }

  double worst_pull = 0.0;
  for (int s = 0; s < 16; ++s) {
    double mean = 0.0;
    for (int b = 0; b < n_blocks; ++b)
      mean += block_freq[static_cast<std::size_t>(b)][static_cast<std::size_t>(s)];
    mean /= n_blocks;
    double var = 0.0;
    for (int b = 0; b < n_blocks; ++b) {
      double dev =
          block_freq[static_cast<std::size_t>(b)][static_cast<std::size_t>(s)] - mean;
      var += dev * dev;
    }
    double sigma = std::sqrt(var / (n_blocks - 1) / n_blocks);
    double pull = std::abs(mean - exact[static_cast<std::size_t>(s)]) / sigma;
    worst_pull = std::max(worst_pull, pull);
  }
  return {worst_pull <= 3.0, "worst |empirical - exact| = " + num(worst_pull) +
                                 " sigma over 16 states, " +
                                 std::to_string(n_samples) + " samples"};
}

// --- C10: rerunning every subcommand with the same seed is byte-identical ---

int run_cli(const std::string& cli, const std::string& out_dir, const std::string& args) {
  std::string cmd = cli + " --seed 7 --out " + out_dir + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

bool same_bytes(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  std::ostringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return sa.str() == sb.str();
}

// the manifest carries the single timestamp field; everything else must match
// byte for byte
bool same_manifest(const fs::path& a, const fs::path& b) {
  std::ifstream fa(a), fb(b);
  json ja = json::parse(fa), jb = json::parse(fb);
  ja.erase("generated_at");
  jb.erase("generated_at");
  return ja.dump() == jb.dump();
}

Result c10_rerun_determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no cli path given (argv[1])"};
  fs::path base("acceptance-c10");
  fs::remove_all(base);
  fs::create_directories(base);

  std::string code_path = (base / "code.txt").string();
  {
    std::ofstream out(code_path);
    write_code(rate50_code(), out);
  }

  struct Cmd {
    std::string name, args;
  };
  std::vector<Cmd> cmds{
      {"rate", "rate " + code_path},
      {"fractal", "fractal " + code_path + " --depths 1,2,3,4"},
      {"complexity", "complexity " + code_path},
      {"statmech", "statmech " + code_path + " --rescale"},
      {"bound", "bound --d 3"},
      {"ising",
       "ising --d 2 --L 6,8,12 --temps 2.1,2.2,2.3,2.4 --measurements 2500 --therm 500 "
       "--blocks 20"},
      {"pipeline", "pipeline --quick --measurements 1500 --therm 400"},
  };

  int files_checked = 0;
  for (const auto& cmd : cmds) {
    // both runs use the same --out path so embedded configs agree; the tree is
    // renamed away between runs, which also forces a full recompute
    fs::path work = base / (cmd.name + "-work");
    for (int run = 1; run <= 2; ++run) {
      int rc = run_cli(cli, work.string(), cmd.args);
      if (rc != 0)
        return {false, cmd.name + " run " + std::to_string(run) + " exited with " +
                           std::to_string(rc)};
      fs::rename(work, base / (cmd.name + "-run" + std::to_string(run)));
    }
    fs::path r1 = base / (cmd.name + "-run1"), r2 = base / (cmd.name + "-run2");
    std::size_t count1 = 0, count2 = 0;
    for (auto it = fs::recursive_directory_iterator(r2); it != fs::recursive_directory_iterator(); ++it)
      if (it->is_regular_file()) ++count2;
    for (auto it = fs::recursive_directory_iterator(r1); it != fs::recursive_directory_iterator(); ++it) {
      if (!it->is_regular_file()) continue;
      ++count1;
      fs::path rel = fs::relative(it->path(), r1);
      fs::path other = r2 / rel;
      if (!fs::exists(other)) return {false, cmd.name + ": " + rel.string() + " missing in rerun"};
      bool same = rel.filename() == "manifest.json" ? same_manifest(it->path(), other)
                                                    : same_bytes(it->path(), other);
      if (!same) return {false, cmd.name + ": " + rel.string() + " differs between runs"};
      ++files_checked;
    }
    if (count1 != count2)
      return {false, cmd.name + ": run outputs differ in file count"};
  }
  return {true, std::to_string(files_checked) + " files byte-identical across reruns of " +
                    std::to_string(cmds.size()) + " subcommands"};
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";

  struct Criterion {
    const char* id;
    const char* title;
    double budget_s;
    std::function<Result()> run;
  };
  std::vector<Criterion> criteria{
      {"C1", "box dimension reproduces the rate", 5, c1_rate_dimension},
      {"C2", "closed-form partition function", 5, c2_partition_closed_form},
      {"C3", "keane rescale and critical beta", 10, c3_keane_rescale},
      {"C4", "complexity proxy tracks the rate", 60, c4_proxy_tracks_rate},
      {"C5", "2d criticality (T_c, nu, correlator)", 900, c5_ising_2d},
      {"C6", "3d criticality and Tsirelson-adjacent bound", 2700, c6_ising_3d},
      {"C7", "4d criticality and PR-box bound", 2700, c7_ising_4d},
      {"C8", "exact bound anchors", 1, c8_bound_anchors},
      {"C9", "2x2 metropolis vs exact Boltzmann", 60, c9_metropolis_boltzmann},
      {"C10", "seeded reruns are byte-identical", 600,
       [&cli] { return c10_rerun_determinism(cli); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    bool in_budget = secs <= c.budget_s;
    bool pass = r.ok && in_budget;
    if (!pass) ++failures;
    std::printf("%-4s %-4s %7.1fs  %s: %s%s\n", c.id, pass ? "PASS" : "FAIL", secs,
                c.title, r.detail.c_str(),
                in_budget ? "" : " [over budget]");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
