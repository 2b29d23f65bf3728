// Monte Carlo subcommands: `ising` orchestrates checkpointed (L, T) cells into
// Binder crossings and a nu fit; `pipeline` chains codes -> complexity order ->
// criticality in d = 2,3,4 -> bound reports into one manifest.
//
// Each cell's seed derives from the master seed and the cell's own parameter
// string, so a grid can be extended, interrupted or resumed without changing
// any previously computed cell.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <set>
#include <vector>

#include "cli_common.hpp"

#include "critlang/bounds.hpp"
#include "critlang/codes.hpp"
#include "critlang/complexity.hpp"
#include "critlang/errors.hpp"
#include "critlang/fractal.hpp"
#include "critlang/fss.hpp"
#include "critlang/wordlattice.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace critlang::cli {

namespace fs = std::filesystem;

namespace {

// ------------------------------------------------------ cell checkpoints --

std::string algorithm_name(Algorithm a) {
  return a == Algorithm::wolff ? "wolff" : "metropolis";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "wolff") return Algorithm::wolff;
  if (name == "metropolis") return Algorithm::metropolis;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string cell_param_string(const CellSpec& s, const FssConfig& f) {
  return "d=" + std::to_string(s.d) + "|L=" + std::to_string(s.L) + "|t=" + fmt(s.t) +
         "|alg=" + algorithm_name(f.algorithm) +
         "|therm=" + std::to_string(f.thermalization) +
         "|meas=" + std::to_string(f.measurements) +
         "|stride=" + std::to_string(f.stride) + "|blocks=" + std::to_string(f.blocks);
}

void write_cell(const fs::path& path, const CellStats& cell, const FssConfig& f,
                std::uint64_t seed) {
  json j{{"spec", {{"d", cell.spec.d}, {"L", cell.spec.L}, {"t", cell.spec.t}}},
         {"algorithm", algorithm_name(f.algorithm)},
         {"thermalization", f.thermalization},
         {"stride", f.stride},
         {"seed", seed},
         {"rng", kRngVersion},
         {"measurements", cell.measurements},
         {"blocks", cell.blocks}};
  write_json(path, j);
}

CellStats load_cell(const fs::path& path) {
  std::ifstream in(path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("cell checkpoint " + path.string() + ": " + e.what());
  }
  CellStats cell;
  cell.spec = {j.at("spec").at("d").get<int>(), j.at("spec").at("L").get<int>(),
               j.at("spec").at("t").get<double>()};
  cell.measurements = j.at("measurements").get<std::size_t>();
  cell.blocks = j.at("blocks").get<std::vector<std::vector<double>>>();
  summarize_cell(cell);
  return cell;
}

// runs (or loads) every cell; per-cell seeds are pure functions of the master
// seed and the cell parameters, so scheduling cannot affect any result
std::vector<CellStats> checkpointed_cells(const fs::path& cell_dir,
                                          const std::vector<CellSpec>& specs,
                                          const FssConfig& fss, std::uint64_t master_seed,
                                          int threads, std::size_t* loaded) {
  fs::create_directories(cell_dir);
  SplitMix64 master(master_seed);
  std::vector<std::uint64_t> seeds(specs.size());
  std::vector<fs::path> paths(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    std::string params = cell_param_string(specs[i], fss);
    seeds[i] = master.split(fnv1a64(params)).state();
    std::string key = hex16(fnv1a64(params + "|seed=" + std::to_string(seeds[i]) +
                                    "|rng=" + kRngVersion));
    paths[i] = cell_dir / ("cell-" + key + ".json");
  }

  std::vector<CellStats> cells(specs.size());
  std::vector<std::size_t> missing;
  if (loaded != nullptr) *loaded = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (fs::exists(paths[i])) {
      cells[i] = load_cell(paths[i]);
      if (loaded != nullptr) ++*loaded;
    } else {
      missing.push_back(i);
    }
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) \
    num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
  for (long long k = 0; k < static_cast<long long>(missing.size()); ++k) {
    std::size_t i = missing[static_cast<std::size_t>(k)];
    cells[i] = run_cell(specs[i], fss, seeds[i]);
  }
  (void)threads;
  for (std::size_t i : missing) write_cell(paths[i], cells[i], fss, seeds[i]);
  return cells;
}

void write_cells_csv(const fs::path& path, const json& config,
                     const std::vector<CellStats>& cells) {
  auto csv = open_out(path);
  csv_preamble(csv, config);
  csv << "d,L,t,binder,binder_err,dbinder_dt,dbinder_dt_err,abs_m,abs_m_err,"
         "e_density,e_density_err,measurements\n";
  for (const auto& c : cells)
    csv << c.spec.d << "," << c.spec.L << "," << fmt(c.spec.t) << "," << fmt(c.binder)
        << "," << fmt(c.binder_err) << "," << fmt(c.dbinder_dt) << ","
        << fmt(c.dbinder_dt_err) << "," << fmt(c.abs_m) << "," << fmt(c.abs_m_err) << ","
        << fmt(c.e_density) << "," << fmt(c.e_density_err) << "," << c.measurements
        << "\n";
}

// crossing for >= 2 sizes, nu fit for >= 3; fewer sizes simply omit the keys
json criticality_json(const std::vector<CellStats>& cells) {
  std::set<int> sizes;
  for (const auto& c : cells) sizes.insert(c.spec.L);
  json j{{"cells", cells.size()}, {"sizes", std::vector<int>(sizes.begin(), sizes.end())}};
  if (sizes.size() < 2) return j;
  auto crossing = binder_crossing(cells);
  j["t_c"] = crossing.t_c;
  j["t_c_err"] = crossing.err;
  json pairs = json::array();
  for (const auto& p : crossing.pairs)
    pairs.push_back({{"l_small", p.l_small},
                     {"l_large", p.l_large},
                     {"t_c", p.t_c},
                     {"err", p.err}});
  j["pairs"] = pairs;
  if (sizes.size() < 3) return j;
  auto fit = estimate_nu(cells, crossing);
  j["nu"] = fit.nu;
  j["nu_err"] = fit.nu_err;
  j["exponent"] = fit.exponent;
  j["exponent_err"] = fit.exponent_err;
  j["chi2"] = fit.chi2;
  j["dof"] = fit.dof;
  j["method"] = fit.method;
  json points = json::array();
  for (const auto& pt : fit.points)
    points.push_back({{"L", pt.L}, {"slope", pt.slope}, {"slope_err", pt.slope_err}});
  j["points"] = points;
  return j;
}

// ---------------------------------------------------------------- ising ----

struct IsingParams {
  int d = 2;
  std::vector<int> Ls;
  std::vector<double> temps;
  std::string algorithm = "wolff";
  std::int64_t thermalization = 0;  // 0 = preset
  std::int64_t measurements = 0;
  int stride = 0;
  int blocks = 0;
  bool series = false;
  CLI::Option *d_opt = nullptr, *l_opt = nullptr, *t_opt = nullptr, *alg_opt = nullptr,
              *therm_opt = nullptr, *meas_opt = nullptr, *stride_opt = nullptr,
              *blocks_opt = nullptr, *series_opt = nullptr;
};

void apply_presets(IsingParams& p, bool quick) {
  if (p.Ls.empty()) {
    if (quick) {
      p.Ls = p.d == 2 ? std::vector<int>{8, 12, 16}
                      : p.d == 3 ? std::vector<int>{4, 6, 8} : std::vector<int>{3, 4, 5};
    } else {
      p.Ls = p.d == 2 ? std::vector<int>{8, 16, 32}
                      : p.d == 3 ? std::vector<int>{4, 6, 8, 12, 16}
                                 : std::vector<int>{3, 4, 5, 6};
    }
  }
  if (p.temps.empty()) {
    switch (p.d) {
      case 2: p.temps = quick ? std::vector<double>{2.15, 2.20, 2.25, 2.30, 2.35}
                              : std::vector<double>{2.23, 2.25, 2.27, 2.29, 2.31};
              break;
      case 3: p.temps = quick ? std::vector<double>{4.30, 4.40, 4.50, 4.60, 4.70}
                              : std::vector<double>{4.42, 4.46, 4.50, 4.54, 4.58, 4.62};
              break;
      default: p.temps = quick ? std::vector<double>{6.40, 6.55, 6.70, 6.85}
                               : std::vector<double>{6.50, 6.56, 6.62, 6.68, 6.74, 6.80};
    }
  }
  if (p.thermalization == 0) p.thermalization = quick ? 1000 : 2000;
  if (p.measurements == 0) p.measurements = quick ? 6000 : 20000;
  if (p.stride == 0) p.stride = 2;
  if (p.blocks == 0) p.blocks = quick ? 30 : 50;
}

json ising_config(const IsingParams& p, const GlobalOpts& g) {
  return json{{"command", "ising"},
              {"d", p.d},
              {"L", p.Ls},
              {"temps", p.temps},
              {"algorithm", p.algorithm},
              {"thermalization", p.thermalization},
              {"measurements", p.measurements},
              {"stride", p.stride},
              {"blocks", p.blocks},
              {"series", p.series},
              {"seed", g.seed},
              {"threads", g.threads},
              {"quick", g.quick},
              {"out", g.out_dir}};
}

void run_ising(GlobalOpts& g, IsingParams& p) {
  json file_cfg = resolve_globals(g);
  merge(file_cfg, "d", p.d_opt, p.d);
  merge(file_cfg, "L", p.l_opt, p.Ls);
  merge(file_cfg, "temps", p.t_opt, p.temps);
  merge(file_cfg, "algorithm", p.alg_opt, p.algorithm);
  merge(file_cfg, "thermalization", p.therm_opt, p.thermalization);
  merge(file_cfg, "measurements", p.meas_opt, p.measurements);
  merge(file_cfg, "stride", p.stride_opt, p.stride);
  merge(file_cfg, "blocks", p.blocks_opt, p.blocks);
  merge(file_cfg, "series", p.series_opt, p.series);
  apply_presets(p, g.quick);

  if (p.d < 2 || p.d > 4) throw std::invalid_argument("ising: d must be 2, 3 or 4");
  for (int L : p.Ls)
    if (L < 2) throw std::invalid_argument("ising: L must be at least 2");
  for (double t : p.temps)
    if (!(t > 0.0)) throw std::invalid_argument("ising: temperatures must be positive");
  std::sort(p.Ls.begin(), p.Ls.end());
  p.Ls.erase(std::unique(p.Ls.begin(), p.Ls.end()), p.Ls.end());
  std::sort(p.temps.begin(), p.temps.end());
  p.temps.erase(std::unique(p.temps.begin(), p.temps.end()), p.temps.end());

  FssConfig fss;
  fss.algorithm = parse_algorithm(p.algorithm);
  fss.thermalization = p.thermalization;
  fss.measurements = p.measurements;
  fss.stride = p.stride;
  fss.blocks = p.blocks;

  json config = ising_config(p, g);

  if (p.series) {
    if (p.Ls.size() != 1 || p.temps.size() != 1)
      throw std::invalid_argument("ising --series wants exactly one L and one temperature");
    MCConfig mc;
    mc.algorithm = fss.algorithm;
    mc.temperature = p.temps[0];
    mc.updates = p.measurements * p.stride;
    mc.thermalization = p.thermalization;
    mc.stride = p.stride;
    mc.seed = SplitMix64(g.seed)
                  .split(fnv1a64(cell_param_string({p.d, p.Ls[0], p.temps[0]}, fss)))
                  .state();
    auto lat = SpinLattice::ordered(p.d, p.Ls[0]);
    auto obs = run_mc(mc, lat);
    auto csv = open_out(fs::path(g.out_dir) / "series.csv");
    csv_preamble(csv, config);
    csv << "sweep,e,m\n";
    for (std::size_t i = 0; i < obs.energy.size(); ++i)
      csv << p.thermalization + static_cast<std::int64_t>(i + 1) * p.stride << ","
          << fmt(obs.energy[i]) << "," << fmt(obs.mag[i]) << "\n";
    std::cout << "L=" << p.Ls[0] << " T=" << fmt(p.temps[0]) << ": e "
              << fmt(obs.e_mean) << " +/- " << fmt(obs.e_err) << ", |m| "
              << fmt(obs.m_abs_mean) << " +/- " << fmt(obs.m_abs_err) << ", U4 "
              << fmt(obs.binder) << "\n";
    return;
  }

  std::vector<CellSpec> specs;
  for (int L : p.Ls)
    for (double t : p.temps) specs.push_back({p.d, L, t});

  std::size_t loaded = 0;
  auto cells = checkpointed_cells(fs::path(g.out_dir) / "cells", specs, fss, g.seed,
                                  g.threads, &loaded);
  write_cells_csv(fs::path(g.out_dir) / "cells.csv", config, cells);

  json report{{"command", "ising"}, {"config", config}, {"rng", kRngVersion},
              {"loaded_from_checkpoint", loaded}};
  json crit = criticality_json(cells);
  report.update(crit);
  write_json(fs::path(g.out_dir) / "critical_fit.json", report);

  std::cout << cells.size() << " cells (" << loaded << " from checkpoints)\n";
  if (crit.contains("t_c"))
    std::cout << "T_c = " << fmt(crit["t_c"].get<double>()) << " +/- "
              << fmt(crit["t_c_err"].get<double>()) << "\n";
  if (crit.contains("nu"))
    std::cout << "nu = " << fmt(crit["nu"].get<double>()) << " +/- "
              << fmt(crit["nu_err"].get<double>()) << "\n";
  else
    std::cout << "(nu fit needs at least three sizes)\n";
}

// ------------------------------------------------------------- pipeline ----

struct PipelineParams {
  std::int64_t thermalization = 0;
  std::int64_t measurements = 0;
  int stride = 0;
  int blocks = 0;
  CLI::Option *therm_opt = nullptr, *meas_opt = nullptr, *stride_opt = nullptr,
              *blocks_opt = nullptr;
};

struct PipelineGrid {
  std::vector<int> Ls;
  std::vector<double> temps;
};

PipelineGrid pipeline_grid(int d, bool quick, const json& file_cfg) {
  PipelineGrid grid;
  switch (d) {
    case 2:
      grid.Ls = quick ? std::vector<int>{6, 8, 12} : std::vector<int>{8, 12, 16};
      grid.temps = {2.15, 2.20, 2.25, 2.30, 2.35};
      break;
    case 3:
      grid.Ls = quick ? std::vector<int>{3, 4, 6} : std::vector<int>{4, 6, 8};
      grid.temps = {4.30, 4.40, 4.50, 4.60, 4.70};
      break;
    default:
      grid.Ls = quick ? std::vector<int>{2, 3, 4} : std::vector<int>{3, 4, 5};
      grid.temps = {6.40, 6.55, 6.70, 6.85};
  }
  std::string lk = "L_d" + std::to_string(d), tk = "temps_d" + std::to_string(d);
  if (file_cfg.contains(lk)) grid.Ls = file_cfg.at(lk).get<std::vector<int>>();
  if (file_cfg.contains(tk)) grid.temps = file_cfg.at(tk).get<std::vector<double>>();
  return grid;
}

json bound_row(const BoundReport& r) {
  json j{{"d", r.d},
         {"N", 2 * r.d},
         {"source", r.source},
         {"nu", r.nu},
         {"nu_err", r.nu_err},
         {"two_delta", r.two_delta},
         {"two_delta_err", r.two_delta_err},
         {"s_value", r.s_value},
         {"s_err", r.s_err},
         {"gap_classical", r.gap_classical},
         {"gap_tsirelson", r.gap_tsirelson},
         {"gap_pr", r.gap_pr},
         {"exact", r.exact}};
  if (r.two_delta_exact) j["two_delta_exact"] = r.two_delta_exact->str();
  return j;
}

BoundReport literature_bound(int d) {
  switch (d) {
    case 2: return bound_report_exact(2, Rational(1, 1), "literature");
    case 3: return bound_report(3, 0.62999, 0.00005, "literature");
    default: return bound_report_exact(4, Rational(1, 2), "literature");
  }
}

void run_pipeline(GlobalOpts& g, PipelineParams& p) {
  json file_cfg = resolve_globals(g);
  merge(file_cfg, "thermalization", p.therm_opt, p.thermalization);
  merge(file_cfg, "measurements", p.meas_opt, p.measurements);
  merge(file_cfg, "stride", p.stride_opt, p.stride);
  merge(file_cfg, "blocks", p.blocks_opt, p.blocks);
  if (p.thermalization == 0) p.thermalization = g.quick ? 500 : 1000;
  if (p.measurements == 0) p.measurements = g.quick ? 3000 : 6000;
  if (p.stride == 0) p.stride = 2;
  if (p.blocks == 0) p.blocks = 30;

  fs::path out(g.out_dir);
  fs::create_directories(out);
  std::vector<std::string> files;

  json config{{"command", "pipeline"},
              {"seed", g.seed},
              {"threads", g.threads},
              {"quick", g.quick},
              {"thermalization", p.thermalization},
              {"measurements", p.measurements},
              {"stride", p.stride},
              {"blocks", p.blocks},
              {"out", g.out_dir}};

  SplitMix64 master(g.seed);

  // --- stage 1: codes and their fractal dimensions -------------------------
  struct NamedCode {
    std::string name;
    Code code;
  };
  std::vector<NamedCode> codes{
      {"rate25", linear_code(2, {{1, 0, 1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 0, 1, 0, 1}})},
      {"rate50", linear_code(2, {{1, 0, 0, 0, 1, 1, 0, 1},
                                 {0, 1, 0, 0, 1, 0, 1, 1},
                                 {0, 0, 1, 0, 0, 1, 1, 1},
                                 {0, 0, 0, 1, 1, 1, 1, 0}})},
      {"rate75", linear_code(2, {{1, 0, 0, 0, 0, 0, 1, 1},
                                 {0, 1, 0, 0, 0, 0, 1, 0},
                                 {0, 0, 1, 0, 0, 0, 0, 1},
                                 {0, 0, 0, 1, 0, 0, 1, 1},
                                 {0, 0, 0, 0, 1, 0, 1, 0},
                                 {0, 0, 0, 0, 0, 1, 0, 1}})}};

  json codes_json = json::array();
  {
    auto csv = open_out(out / "codes.csv");
    csv_preamble(csv, config);
    csv << "name,file,q,n,words,rate,raw_dimension,normalized_dimension\n";
    for (const auto& nc : codes) {
      std::string rel = "codes/" + nc.name + ".txt";
      auto cf = open_out(out / rel);
      write_code(nc.code, cf);
      files.push_back(rel);
      auto est = box_dimension(nc.code, {1, 2, 3});
      csv << nc.name << "," << rel << "," << nc.code.q() << "," << nc.code.n() << ","
          << nc.code.size() << "," << fmt(nc.code.rate()) << "," << fmt(est.raw) << ","
          << fmt(est.normalized) << "\n";
      codes_json.push_back({{"name", nc.name},
                            {"file", rel},
                            {"q", nc.code.q()},
                            {"n", nc.code.n()},
                            {"words", nc.code.size()},
                            {"rate", nc.code.rate()},
                            {"normalized_dimension", est.normalized}});
    }
    files.push_back("codes.csv");
  }

  // --- stage 2: complexity ordering of codeword concatenations -------------
  // per code, concatenations of 8 random codewords; their proxy complexity
  // tracks the rate, so the ordering clusters roughly by code
  int per_code = g.quick ? 32 : 64;
  std::vector<Word> pool;
  SplitMix64 word_stage = master.split(fnv1a64("pipeline-words"));
  for (std::size_t ci = 0; ci < codes.size(); ++ci) {
    const Code& c = codes[ci].code;
    for (int i = 0; i < per_code; ++i) {
      SplitMix64 rng = word_stage.split(ci * 4096 + static_cast<std::uint64_t>(i));
      std::vector<std::uint8_t> letters;
      letters.reserve(8 * static_cast<std::size_t>(c.n()));
      for (int b = 0; b < 8; ++b) {
        const Word& w = c.words()[rng.uniform_below(c.size())];
        letters.insert(letters.end(), w.letters().begin(), w.letters().end());
      }
      pool.push_back(Word(letters));
    }
  }
  auto order = kolmogorov_order(pool, 2, {}, 0.01, g.threads);
  std::vector<std::uint32_t> cluster_of(order.ranking.size());
  for (std::uint32_t c = 0; c < order.clusters.size(); ++c)
    for (auto r = order.clusters[c].first; r < order.clusters[c].second; ++r)
      cluster_of[r] = c;
  {
    auto csv = open_out(out / "complexity.csv");
    csv_preamble(csv, config);
    csv << "# compressor: " << kCompressorVersion << "\n";
    csv << "rank,word,kappa,cluster\n";
    for (std::size_t r = 0; r < order.ranking.size(); ++r)
      csv << r << "," << order.words[order.ranking[r]].str() << ","
          << fmt(order.kappas[order.ranking[r]]) << "," << cluster_of[r] << "\n";
    files.push_back("complexity.csv");
  }

  // --- stage 3: H2 dynamics on the proxy N=6 neighbor graph ----------------
  auto graph = neighbor_graph(order, 6, 0.01);
  auto bonds = graph_bonds(graph);
  WordMCConfig wmc;
  wmc.temperature = 2.0;
  wmc.updates = g.quick ? 150 : 300;
  wmc.thermalization = 50;
  wmc.seed = master.split(fnv1a64("pipeline-wordmc")).state();
  auto wl = WordLattice::uniform(pool.size(), static_cast<int>(pool[0].size()), 1);
  auto wobs = run_word_mc(wmc, wl, bonds);
  json word_mc{{"sites", pool.size()},
               {"word_len", pool[0].size()},
               {"neighbors", 6},
               {"bonds", bonds.size()},
               {"temperature", wmc.temperature},
               {"updates", wmc.updates},
               {"e_mean", wobs.e_mean},
               {"e_err", wobs.e_err},
               {"abs_m_mean", wobs.m_abs_mean},
               {"abs_m_err", wobs.m_abs_err},
               {"acceptance", wobs.acceptance}};

  // --- stage 4: criticality in d = 2, 3, 4 ---------------------------------
  FssConfig fss;
  fss.algorithm = Algorithm::wolff;
  fss.thermalization = p.thermalization;
  fss.measurements = p.measurements;
  fss.stride = p.stride;
  fss.blocks = p.blocks;

  json criticality;
  json bounds_rows = json::array();
  {
    auto csv = open_out(out / "bounds.csv");
    csv_preamble(csv, config);
    csv << "d,N,source,nu,nu_err,two_delta,two_delta_err,s_value,s_err,"
           "gap_classical,gap_tsirelson,gap_pr\n";
    auto emit = [&csv, &bounds_rows](const BoundReport& r) {
      csv << r.d << "," << 2 * r.d << "," << r.source << "," << fmt(r.nu) << ","
          << fmt(r.nu_err) << "," << fmt(r.two_delta) << "," << fmt(r.two_delta_err)
          << "," << fmt(r.s_value) << "," << fmt(r.s_err) << "," << fmt(r.gap_classical)
          << "," << fmt(r.gap_tsirelson) << "," << fmt(r.gap_pr) << "\n";
      bounds_rows.push_back(bound_row(r));
    };

    std::cout << "d  N  nu (simulated)        2*Delta (simulated)   2*Delta (literature)\n";
    for (int d = 2; d <= 4; ++d) {
      PipelineGrid grid = pipeline_grid(d, g.quick, file_cfg);
      std::vector<CellSpec> specs;
      for (int L : grid.Ls)
        for (double t : grid.temps) specs.push_back({d, L, t});
      std::size_t loaded = 0;
      auto cells =
          checkpointed_cells(out / "cells", specs, fss, g.seed, g.threads, &loaded);
      std::string tag = "d" + std::to_string(d);
      write_cells_csv(out / ("cells_" + tag + ".csv"), config, cells);
      files.push_back("cells_" + tag + ".csv");

      json crit = criticality_json(cells);
      crit["L"] = grid.Ls;
      crit["temps"] = grid.temps;
      crit["loaded_from_checkpoint"] = loaded;
      criticality[tag] = crit;

      auto simulated = bound_report(d, crit.at("nu").get<double>(),
                                    crit.at("nu_err").get<double>(), "simulated");
      auto literature = literature_bound(d);
      emit(simulated);
      emit(literature);

      std::cout << d << "  " << 2 * d << "  " << fmt(simulated.nu) << " +/- "
                << fmt(simulated.nu_err) << "  " << fmt(simulated.two_delta) << " +/- "
                << fmt(simulated.two_delta_err) << "  " << fmt(literature.two_delta)
                << "\n";
    }
    files.push_back("bounds.csv");
  }

  // --- manifest -------------------------------------------------------------
  std::sort(files.begin(), files.end());
  json manifest{{"command", "pipeline"},
                {"config", config},
                {"rng", kRngVersion},
                {"compressor", kCompressorVersion},
                {"codes", codes_json},
                {"complexity",
                 {{"words", pool.size()},
                  {"clusters", order.clusters.size()},
                  {"tau", 0.01},
                  {"kappa_min", order.kappas[order.ranking.front()]},
                  {"kappa_max", order.kappas[order.ranking.back()]}}},
                {"word_mc", word_mc},
                {"criticality", criticality},
                {"bounds", bounds_rows},
                {"files", files},
                {"generated_at", iso_utc_now()}};
  write_json(out / "manifest.json", manifest);
  std::cout << "manifest: " << (out / "manifest.json").string() << "\n";
}

}  // namespace

// ---------------------------------------------------------------- wiring --

void setup_mc_commands(CLI::App& app, GlobalOpts& g) {
  auto ip = std::make_shared<IsingParams>();
  auto* ising = app.add_subcommand(
      "ising", "monte carlo criticality: checkpointed cells, binder crossing, nu fit");
  ip->d_opt = ising->add_option("--d", ip->d, "lattice dimension (2, 3 or 4)");
  ip->l_opt = ising->add_option("--L", ip->Ls, "lattice sides")->delimiter(',');
  ip->t_opt = ising->add_option("--temps", ip->temps, "temperature grid")->delimiter(',');
  ip->alg_opt = ising->add_option("--algorithm", ip->algorithm, "wolff or metropolis")
                    ->check(CLI::IsMember({"wolff", "metropolis"}));
  ip->therm_opt =
      ising->add_option("--therm", ip->thermalization, "thermalization updates");
  ip->meas_opt = ising->add_option("--measurements", ip->measurements,
                                   "measurements per cell");
  ip->stride_opt = ising->add_option("--stride", ip->stride, "updates per measurement");
  ip->blocks_opt = ising->add_option("--blocks", ip->blocks, "jackknife blocks");
  ip->series_opt = ising->add_flag("--series", ip->series,
                                   "emit the (sweep, e, m) time series of a single cell");
  ising->callback([&g, ip] { run_ising(g, *ip); });

  auto pp = std::make_shared<PipelineParams>();
  auto* pipeline = app.add_subcommand(
      "pipeline", "codes -> complexity order -> criticality -> bounds, one manifest");
  pp->therm_opt =
      pipeline->add_option("--therm", pp->thermalization, "thermalization updates");
  pp->meas_opt = pipeline->add_option("--measurements", pp->measurements,
                                      "measurements per cell");
  pp->stride_opt =
      pipeline->add_option("--stride", pp->stride, "updates per measurement");
  pp->blocks_opt = pipeline->add_option("--blocks", pp->blocks, "jackknife blocks");
  pipeline->callback([&g, pp] { run_pipeline(g, *pp); });
}

}  // namespace critlang::cli
