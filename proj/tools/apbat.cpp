#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "apbat/cli.hpp"

int main(int argc, char** argv) {
  using apbat::cli::Command;
  apbat::cli::RunConfig cfg;

  CLI::App app{"Exact all-pairs two-terminal reliability of undirected binary-state networks"};
  app.require_subcommand(1);

  const std::map<std::string, apbat::Format> formats{{"table", apbat::Format::Table},
                                                     {"csv", apbat::Format::Csv}};

  auto* compute = app.add_subcommand("compute", "all-pairs reliability matrix");
  compute->add_option("--input", cfg.input, "edge-list file")->required();
  compute->add_option("--p", cfg.p, "homogeneous arc probability");
  compute->add_option("--workers", cfg.workers, "enumeration threads")->check(CLI::PositiveNumber);
  compute->add_option("--format", cfg.format, "table or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
      ->option_text("table|csv");
  compute->add_flag("--counts", cfg.counts, "also emit the connected-vector count matrix");
  compute->add_flag("--force", cfg.force, "allow more than 30 arcs");
  compute->add_flag("--allow-disconnected", cfg.allow_disconnected,
                    "accept graphs that are disconnected with all arcs working");

  auto* oracle = app.add_subcommand("oracle", "compare against the union-find brute force");
  oracle->add_option("--input", cfg.input, "edge-list file")->required();
  oracle->add_option("--p", cfg.p, "homogeneous arc probability");
  oracle->add_flag("--allow-disconnected", cfg.allow_disconnected);

  auto* mc = app.add_subcommand("mc", "Monte-Carlo estimate with standard errors");
  mc->add_option("--input", cfg.input, "edge-list file")->required();
  mc->add_option("--p", cfg.p, "homogeneous arc probability");
  mc->add_option("--samples", cfg.samples, "sample count")->required()->check(CLI::PositiveNumber);
  mc->add_option("--seed", cfg.seed, "64-bit seed")->required();
  mc->add_flag("--allow-disconnected", cfg.allow_disconnected);

  auto* gen = app.add_subcommand("gen", "random connected simple graph");
  gen->add_option("--nodes", cfg.nodes, "node count")->required();
  gen->add_option("--arcs", cfg.arcs, "arc count")->required();
  gen->add_option("--seed", cfg.seed, "64-bit seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return apbat::cli::kBadArguments;
  }

  if (compute->parsed()) cfg.command = Command::Compute;
  if (oracle->parsed()) cfg.command = Command::Oracle;
  if (mc->parsed()) cfg.command = Command::Mc;
  if (gen->parsed()) cfg.command = Command::Gen;

  return apbat::cli::run(cfg, std::cout, std::cerr);
}
