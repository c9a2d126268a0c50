// mapcoh: cohomology of mapping spaces from finite simplicial sets.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mapcoh/commands.hpp"

int main(int argc, char** argv) {
  using mapcoh::cli::RunConfig;
  CLI::App app{"Cohomology of mapping spaces Y^K with group actions on K"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string pmax = "auto";
  std::string field;
  std::string backend;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", cfg.output, "Write the JSON report here instead of stdout");
  };
  auto add_mapping = [&](CLI::App* sub) {
    sub->add_option("--source", cfg.source, "Source simplicial set K (JSON)")->required();
    sub->add_option("--coeff", cfg.coeff, "Coefficient file (JSON)")->required();
    sub->add_option("--field", field, "Field override: Q or F<p>");
    sub->add_option("--max-degree,-N", cfg.max_degree, "Largest cohomological degree N");
    sub->add_option("--pmax", pmax, "Column bound: auto or an integer");
    sub->add_option("--backend", backend, "Backend override: tensor or simplicial");
    add_common(sub);
  };

  auto* homology = app.add_subcommand("homology", "Homology of a finite simplicial set");
  homology->add_option("--source", cfg.source, "Simplicial set (JSON)")->required();
  homology->add_option("--field", field, "Q or F<p> (default Q)");
  homology->add_flag("--reduced", cfg.reduced, "Reduced homology");
  add_common(homology);

  add_mapping(app.add_subcommand("mapspace", "Betti numbers of H^*(Y^K) through degree N"));
  add_mapping(app.add_subcommand("ring", "Betti numbers and the product table on representatives"));
  auto* isotypic = app.add_subcommand("isotypic", "Isotypic decomposition under a group acting on K");
  add_mapping(isotypic);
  isotypic->add_option("--group", cfg.group, "Group file with characters and action (JSON)")->required();
  isotypic->add_flag("--pointed", cfg.pointed, "Require the action to fix the basepoint");

  auto* adj = app.add_subcommand("adjunction-check", "Finite check of Cos(Z, X^K) = sSet(K (x)_D Z, X)");
  adj->add_option("--source", cfg.source, "Source simplicial set K (JSON)")->required();
  adj->add_option("--cosimplicial", cfg.cosimplicial, "yoneda, point or constant:<file>");
  adj->add_option("--target", cfg.target, "Target simplicial set X (JSON)")->required();
  adj->add_option("--trunc", cfg.trunc, "Truncation dimension (default: generator dimension)");
  add_common(adj);

  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : mapcoh::cli::bad_input;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (!field.empty()) cfg.field = field;
  if (!backend.empty()) cfg.backend = backend;
  if (const char* wd = std::getenv("MAPCOH_WORKDIR")) cfg.workdir = wd;
  if (pmax != "auto") {
    try {
      std::size_t used = 0;
      cfg.pmax = std::stoi(pmax, &used);
      if (used != pmax.size()) throw std::invalid_argument(pmax);
    } catch (const std::exception&) {
      std::cerr << "error: --pmax must be 'auto' or an integer\n";
      return mapcoh::cli::bad_input;
    }
  }

  auto outcome = mapcoh::cli::run(cfg);
  const std::string text = outcome.report.dump(2) + "\n";
  if (outcome.report.contains("error"))
    std::cerr << "error: " << outcome.report["error"]["message"].get<std::string>() << "\n";
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.path(cfg.output));
    if (!out) {
      std::cerr << "error: cannot write '" << cfg.output << "'\n";
      return mapcoh::cli::bad_input;
    }
    out << text;
  }
  return outcome.status;
}
