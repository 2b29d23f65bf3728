// critlang command line: one subcommand per stage of the chain, shared global
// flags, json config files with command-line override.  Exit codes: 0 ok,
// 1 bad input (parse/config), 2 numerically failed run (missed crossing,
// refused fit, blown budget).

#include <exception>
#include <iostream>

#include "cli_common.hpp"

#include "critlang/errors.hpp"

int main(int argc, char** argv) {
  using namespace critlang;
  using namespace critlang::cli;

  CLI::App app{"block codes, code fractals, complexity ordering and Ising criticality"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path,
                 "json config file; explicit command-line options win");
  g.seed_opt = app.add_option("--seed", g.seed, "master rng seed");
  g.out_opt = app.add_option("--out", g.out_dir, "output directory");
  g.threads_opt = app.add_option("--threads", g.threads, "openmp threads (0 = runtime default)");
  g.quick_opt = app.add_flag("--quick", g.quick, "smaller presets for smoke runs");

  setup_basic_commands(app, g);
  setup_mc_commands(app, g);
  // accept the global flags after the subcommand too
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
