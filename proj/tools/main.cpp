#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "thurston/cli.hpp"

namespace {

struct Shared {
  std::vector<std::string> inputs;
  std::string output;
  std::string format = "json";
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help, Shared& s,
                      bool takes_input = true, std::size_t max_inputs = 1) {
  CLI::App* sub = app.add_subcommand(name, help);
  if (takes_input) {
    sub->add_option("-i,--input", s.inputs, "input JSON file ('-' for stdin)")
        ->required()
        ->expected(1, static_cast<int>(max_inputs))
        ->allow_extra_args(false);
  }
  sub->add_option("-o,--output", s.output, "write the result here instead of stdout");
  sub->add_option("--format", s.format, "json, off or csv")
      ->check(CLI::IsMember({"json", "off", "csv"}))
      ->capture_default_str();
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  using thurston::cli::Command;
  using thurston::cli::Format;

  CLI::App app{"Thurston norms of graph manifolds, in exact rational arithmetic"};
  app.require_subcommand(1);

  Shared shared;
  Command cmd;
  std::string genera;
  std::size_t max_k = thurston::kDefaultMaxTerms;

  add_command(app, "check", "validate a graph and report its invariants", shared);
  add_command(app, "matrix", "reduced plumbing matrix of a graph", shared);
  add_command(app, "kernel", "kernel basis of a graph's plumbing matrix or of a matrix", shared);
  add_command(app, "norm-eval", "Thurston norm of a class (graph + tuple, or norm + vector)", shared, true, 2);

  auto* ball = add_command(app, "ball", "unit ball of a sum-of-absolute-values norm", shared);
  ball->add_flag("--oracle", cmd.oracle, "use the sign-vector oracle instead of deflation");
  ball->add_flag("--verify-equal", cmd.verify_equal, "compute both and fail if they differ");
  ball->add_option("--max-k", max_k, "largest number of nonzero terms the oracle accepts")
      ->envname("THURSTON_MAX_K")
      ->capture_default_str();

  auto* realize = add_command(app, "realize", "graph manifold realizing a norm", shared);
  realize->add_flag("--fibered,!--no-fibered", cmd.fibered, "request a fibered manifold (--fibered=false for not)")
      ->capture_default_str();
  realize->add_option("--genera", genera, "comma-separated genera, one per functional");

  add_command(app, "complete", "completeness test and completion of a polytope", shared);

  auto* weights = add_command(app, "weights", "weights on ridge planes reproducing a polytope", shared);
  weights->add_option("--max-k", max_k, "largest number of terms the verification oracle accepts")
      ->envname("THURSTON_MAX_K")
      ->capture_default_str();

  auto* verify = add_command(app, "verify", "run the property suite", shared, false);
  verify->add_option("--seed", cmd.seed, "seed for the random cases")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : thurston::cli::exit_code::invalid_input;
  }

  cmd.subcommand = app.get_subcommands().front()->get_name();
  cmd.inputs = shared.inputs;
  if (!shared.output.empty()) cmd.output = shared.output;
  static const std::map<std::string, Format> formats{{"json", Format::Json}, {"off", Format::Off}, {"csv", Format::Csv}};
  cmd.format = formats.at(shared.format);
  cmd.max_k = max_k;
  try {
    if (!genera.empty()) cmd.genera = thurston::cli::parse_genera(genera);
  } catch (const thurston::Error& e) {
    std::cerr << e.what() << '\n';
    return thurston::cli::exit_code::invalid_input;
  }
  return thurston::cli::run(cmd, std::cout, std::cerr);
}
