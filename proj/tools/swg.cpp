#include "swg/run_config.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <string>
#include <utility>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"P0 simplified weak Galerkin solver for linear elasticity"};
  std::string config_file;
  app.add_option("--config", config_file, "key=value file; flags given on the command line override it");

  // Flags share names with config keys; collected raw and applied after the file.
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"case", "analytic case (" + [] {
         std::string s;
         for (const auto& n : swg::case_names()) s += (s.empty() ? "" : ", ") + n;
         return s;
       }() + ")"},
      {"mesh", "mesh family (triangular, rectangular|quadrilateral, hexagonal, octagonal, tetrahedral, cubic, hex_prism)"},
      {"levels", "comma-separated refinement levels n, strictly increasing"},
      {"kappa", "tangential-jump weight >= 0"},
      {"boundary-stab", "on|off: tangential terms on boundary facets"},
      {"formulation", "mixed|primal"},
      {"E", "Young's modulus override"},
      {"nu", "Poisson ratio override"},
      {"tol", "solver relative residual tolerance"},
      {"out", "output directory"},
      {"h1-norm", "discrete|reconstructed"},
      {"h-scale", "local|global stabiliser scale"},
      {"solver", "direct|cg (cg needs primal)"},
      {"traction", "shear beam load: exact|uniform|resultant"},
      {"vtk", "on|off: per-level VTK output"},
  };
  std::vector<std::string> values(flags.size());
  std::vector<CLI::Option*> options;
  for (std::size_t i = 0; i < flags.size(); ++i)
    options.push_back(app.add_option("--" + flags[i].first, values[i], flags[i].second));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : swg::kExitConfig;
  }

  swg::RunConfig config;
  try {
    if (!config_file.empty()) swg::apply_config_file(config, config_file);
    for (std::size_t i = 0; i < flags.size(); ++i) {
      if (options[i]->count() == 0) continue;
      try {
        swg::apply_key(config, flags[i].first, values[i]);
      } catch (const swg::ConfigError& e) {
        throw swg::ConfigError("--" + flags[i].first + ": " + e.what());
      }
    }
    swg::validate(config);
  } catch (const swg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return swg::kExitConfig;
  }

  try {
    return swg::run(config, std::cout);
  } catch (const swg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return swg::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
