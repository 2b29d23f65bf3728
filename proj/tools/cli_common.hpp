#pragma once
// Shared CLI plumbing: global flags, JSON config files with precedence
// CLI > file > defaults, deterministic CSV/JSON emission, and stable hashes
// for checkpoint keys.  Every data file embeds the effective config so a run
// is reproducible from its own outputs.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"

#include "critlang/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace critlang::cli {

using nlohmann::json;

struct GlobalOpts {
  std::string config_path;
  std::uint64_t seed = 1;
  std::string out_dir = "critlang-out";
  int threads = 0;
  bool quick = false;
  // options registered in main, consulted for CLI-vs-file precedence
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* quick_opt = nullptr;
};

inline json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file not readable: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
}

// file value applies only when the flag was not given on the command line
template <class T>
void merge(const json& file_cfg, const char* key, const CLI::Option* opt, T& value) {
  if (opt != nullptr && opt->count() > 0) return;
  if (file_cfg.contains(key)) value = file_cfg.at(key).get<T>();
}

// loads the config file (if any), resolves global flags, applies the thread
// cap; returns the file config for subcommand-level merging
inline json resolve_globals(GlobalOpts& g) {
  json file_cfg = g.config_path.empty() ? json::object() : load_config(g.config_path);
  merge(file_cfg, "seed", g.seed_opt, g.seed);
  merge(file_cfg, "out", g.out_opt, g.out_dir);
  merge(file_cfg, "threads", g.threads_opt, g.threads);
  merge(file_cfg, "quick", g.quick_opt, g.quick);
#ifdef _OPENMP
  if (g.threads > 0) omp_set_num_threads(g.threads);
#endif
  return file_cfg;
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex16(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path.string());
  return out;
}

// leading comment block shared by all CSV outputs
inline void csv_preamble(std::ostream& out, const json& config) {
  out << "# config: " << config.dump() << "\n";
  out << "# rng: " << kRngVersion << "\n";
}

inline void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

inline std::string iso_utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void setup_basic_commands(CLI::App& app, GlobalOpts& g);
void setup_mc_commands(CLI::App& app, GlobalOpts& g);

}  // namespace critlang::cli
