#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cli.hpp"
#include "esym/errors.hpp"

using namespace esym::cli;

namespace {

int emit(const Outcome& outcome, const RunConfig& cfg) {
  if (cfg.out.empty()) {
    render(outcome.record, cfg.format, std::cout);
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      std::cerr << "esym: cannot write '" << cfg.out << "'\n";
      return kUsage;
    }
    render(outcome.record, cfg.format, file);
  }
  return outcome.exit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elementary symmetric polynomial formulas: constructions, decompositions and bounds"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with default flag values");

  RunConfig cfg;
  const std::map<std::string, Format> formats{{"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "number of variables, N or A..B")->capture_default_str();
    sub->add_option("--k", cfg.k, "degree, K or A..B")->capture_default_str();
    sub->add_option("--d", cfg.d, "product-depth")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "corpus seed")->capture_default_str();
    sub->add_option("--format", cfg.format, "text, json or csv")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_flag("--noncommutative", cfg.noncommutative, "expand in the ordered-monomial ring");
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
    sub->add_option("--threads", cfg.threads, "worker threads, 0 for all cores")->capture_default_str();
  };

  std::string construction, file, suite = "all";

  auto* build = app.add_subcommand("build", "build a construction and check it against the oracle");
  build->add_option("construction", construction, "ben-or, newton, depth4, monotone or power-sum")->required();
  common(build);

  auto* verify = app.add_subcommand("verify", "report the properties of a formula file");
  verify->add_option("file", file)->required();
  verify->add_option("--w", cfg.weights, "weights: unit, index:K or VAR:W,VAR:W");
  common(verify);

  auto* decompose = app.add_subcommand("decompose", "decompose a formula file and validate the certificate");
  decompose->add_option("file", file)->required();
  decompose->add_option("--mode", cfg.mode, "balanced or form")->capture_default_str();
  decompose->add_option("--q", cfg.q, "number of factors in form mode")->capture_default_str();
  common(decompose);

  auto* bounds = app.add_subcommand("bounds", "evaluate and check the bound suites");
  bounds->add_option("suite", suite, "compositions, lower, monotone, g, partition or all")->capture_default_str();
  bounds->add_option("--alpha", cfg.alpha, "alpha for the g recurrence, as a rational");
  common(bounds);

  auto* selftest = app.add_subcommand("selftest", "run the seeded property corpus and exhaustive sweeps");
  common(selftest);

  auto* table = app.add_subcommand("table", "sizes and bounds per (n,k)");
  common(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (build->parsed()) return emit(cmd_build(construction, cfg), cfg);
    if (verify->parsed()) return emit(cmd_verify(file, cfg), cfg);
    if (decompose->parsed()) return emit(cmd_decompose(file, cfg), cfg);
    if (bounds->parsed()) return emit(cmd_bounds(suite, cfg), cfg);
    if (selftest->parsed()) return emit(cmd_selftest(cfg), cfg);
    if (table->parsed()) return emit(cmd_table(cfg), cfg);
  } catch (const esym::ParseError& e) {
    std::cerr << "esym: " << e.what() << '\n';
    return kParse;
  } catch (const esym::StructuralError& e) {
    std::cerr << "esym: " << e.what() << '\n';
    return kParse;
  } catch (const esym::PreconditionError& e) {
    std::cerr << "esym: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "esym: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
