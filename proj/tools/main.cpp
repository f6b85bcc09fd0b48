#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"xibergman: weighted xi-Bergman kernels, psh checks and ideal annihilators"};
  app.require_subcommand(1);

  std::string config;
  xib::cli::RunOptions opts;
  std::uint64_t seed = 0;
  int threads = 1;

  for (const auto& name : xib::cli::command_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " pipeline");
    sub->add_option("--config", config, "JSON run configuration")->required();
    sub->add_option("--out", opts.out_dir, "output directory");
    sub->add_option("--seed", seed, "seed for randomized steps");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return xib::cli::kUsageError;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--seed")) opts.seed = seed;
  if (sub->count("--threads")) opts.threads = threads;

  const auto res = xib::cli::execute(sub->get_name(), config, opts);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  if (res.exit_code == xib::cli::kUsageError) {
    std::cerr << "error: " << res.error << "\n";
    return res.exit_code;
  }
  std::cout << res.summary.dump() << "\n";
  return res.exit_code;
}
