#include <iostream>

#include <CLI11.hpp>

#include "degenfront/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Degenerate bistable fronts: profiles, spectra and perturbation runs"};
  std::string subcommand, config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  app.add_option("subcommand", subcommand, "front | spectrum | evolve | sweep | check | report")
      ->required();
  app.add_option("--config", config, "JSON run configuration")->required();
  app.add_option("--out", out, "output directory (overrides 'output')");
  app.add_option("--seed", seed, "random seed (overrides 'seed')");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : degenfront::kExitConfig;
  }
  return degenfront::dispatch(subcommand, config, out, seed, std::cout, std::cerr);
}
