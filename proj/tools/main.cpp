#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using delsumm::cli::RunConfig;

namespace {

void add_inputs(CLI::App* cmd, RunConfig& c, bool corpus) {
  if (corpus) cmd->add_option("--corpus", c.corpus, "Labeled corpus (JSONL)")->envname("DELSUMM_CORPUS");
  cmd->add_option("--references", c.references, "Reference summaries (JSONL), repeat once per annotator")
      ->envname("DELSUMM_REFERENCES");
  cmd->add_option("--lexicons-dir", c.lexicons_dir, "Directory with keywords.txt, statutes.txt, stopwords.txt")
      ->envname("DELSUMM_LEXICONS_DIR");
  cmd->add_option("--profile", c.profile, "india, india-linear or a profile file")
      ->envname("DELSUMM_PROFILE")
      ->capture_default_str();
  cmd->add_option("--out", c.out, "Output directory")->envname("DELSUMM_OUT");
}

void add_solver(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--length", c.length, "Summary length in words, overriding the reference mean")
      ->envname("DELSUMM_LENGTH");
  cmd->add_option("--solver-node-budget", c.node_budget, "Branch-and-bound node limit per document")
      ->envname("DELSUMM_SOLVER_NODE_BUDGET")
      ->capture_default_str();
  cmd->add_option("--solver-time-budget", c.time_budget, "Solver time limit per document, seconds")
      ->envname("DELSUMM_SOLVER_TIME_BUDGET")
      ->capture_default_str();
  cmd->add_option("--workers", c.workers, "Documents processed in parallel")
      ->envname("DELSUMM_WORKERS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guideline-driven extractive summarization of legal case documents"};
  app.require_subcommand(1);
  RunConfig config;

  auto* summarize = app.add_subcommand("summarize", "Write one summary JSON per document");
  add_inputs(summarize, config, true);
  add_solver(summarize, config);
  summarize->add_flag("--dump-lp", config.dump_lp, "Also write each ILP in LP format")->envname("DELSUMM_DUMP_LP");

  auto* evaluate = app.add_subcommand("evaluate", "Score summary runs against references");
  add_inputs(evaluate, config, false);
  evaluate->add_option("--candidates", config.candidates, "Summary directory or JSONL file, repeat per run")
      ->envname("DELSUMM_CANDIDATES");

  auto* compare = app.add_subcommand("compare", "Run DELSumm and baselines at the same length");
  add_inputs(compare, config, true);
  add_solver(compare, config);
  compare->add_option("--methods", config.methods, "delsumm, luhn, lexrank, letsum")
      ->envname("DELSUMM_METHODS")
      ->delimiter(',')
      ->capture_default_str();

  auto* perturb = app.add_subcommand("perturb", "Summarize with gold and with noisy labels");
  add_inputs(perturb, config, true);
  add_solver(perturb, config);
  perturb->add_option("--noise-rate", config.noise_rate, "Probability of replacing a sentence label")
      ->envname("DELSUMM_NOISE_RATE")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  perturb->add_option("--seed", config.seed, "Noise seed")->envname("DELSUMM_SEED")->capture_default_str();

  auto* generate = app.add_subcommand("generate", "Write a synthetic corpus with references and lexicons");
  generate->add_option("--documents", config.documents, "Number of documents")->capture_default_str();
  generate->add_option("--seed", config.seed, "Generator seed")->envname("DELSUMM_SEED")->capture_default_str();
  generate->add_option("--out", config.out, "Output directory")->envname("DELSUMM_OUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : delsumm::cli::kExitBadInput;
  }

  if (summarize->parsed()) return delsumm::cli::cmd_summarize(config, std::cout, std::cerr);
  if (evaluate->parsed()) return delsumm::cli::cmd_evaluate(config, std::cout, std::cerr);
  if (compare->parsed()) return delsumm::cli::cmd_compare(config, std::cout, std::cerr);
  if (perturb->parsed()) return delsumm::cli::cmd_perturb(config, std::cout, std::cerr);
  return delsumm::cli::cmd_generate(config, std::cout, std::cerr);
}
