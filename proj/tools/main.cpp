#include <CLI11.hpp>

#include <iostream>

#include "cli/commands.hpp"

namespace {

struct Subcommand {
  const char* name;
  const char* help;
};

constexpr Subcommand kSubcommands[] = {
    {"validate", "check the descriptor schema and integrability"},
    {"ir", "intrinsic generic radius of convergence at a radius vector"},
    {"oc", "overconvergence evidence from IR at (1,...,1)"},
    {"specialize", "restrict to the coordinate curve through a unit point"},
    {"cutcheck", "search for a coordinate curve witnessing a deficient radius"},
    {"techlemma", "dominant term and unit certificate on a closed subannulus"},
    {"taylor", "direct Taylor-series decay probe"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radius-of-convergence analysis of integrable connections on p-adic polyannuli"};
  app.require_subcommand(1);
  nabla::cli::CommandOptions opts;

  for (const auto& sc : kSubcommands) {
    auto* sub = app.add_subcommand(sc.name, sc.help);
    sub->add_option("descriptor", opts.path, "JSON descriptor file")->required();
    sub->add_option("--depth", opts.depth, "iteration depth (multi-index bound for taylor)");
    sub->add_option("--radius", opts.radius, "radius exponent r (rho = p^-r) per variable; 'inf' for rho = 0");
    sub->add_option("--eta", opts.eta, "exponent of eta");
    sub->add_option("--lambda", opts.lambda, "exponent of lambda");
    sub->add_option("--direction", opts.direction, "direction index (1-based)");
    sub->add_option("--point", opts.point, "unit point coordinate, once per other variable");
    sub->add_option("--trials", opts.trials, "number of random unit points");
    sub->add_option("--seed", opts.seed, "random seed");
    sub->add_option("--tol", opts.tol, "exponent gap treated as equal to 1");
    sub->add_option("--window", opts.window, "fraction of depths used as the estimate window");
    sub->add_option("--alpha", opts.alpha, "exponent of the inner radius alpha");
    sub->add_option("--beta", opts.beta, "exponent of the outer radius beta");
    sub->add_option("--samples", opts.samples, "radii sampled by the unit certificate check");
    sub->add_option("--max-depth", opts.max_depth, "override the iteration depth cap");
    sub->callback([&opts, sub] { opts.command = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : nabla::cli::kExitInvalid;
  }

  auto result = nabla::cli::execute(opts);
  std::cout << nabla::cli::render(result.report);
  return result.exit_code;
}
