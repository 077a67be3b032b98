// meemi: align two embedding spaces, refine them toward their cross-lingual
// averages, and evaluate the result.
//
// Exit codes: 0 success, 1 runtime or data error, 2 usage error.

#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace meemi::cli;

void add_spaces(CLI::App* sub, SpaceArgs& s, bool need_tgt) {
  auto* src = sub->add_option("--src", s.src, "Source-language embeddings (.vec)")->check(CLI::ExistingFile);
  src->required();
  auto* tgt = sub->add_option("--tgt", s.tgt, "Target-language embeddings (.vec)")->check(CLI::ExistingFile);
  if (need_tgt) tgt->required();
  sub->add_option("--limit", s.limit, "Keep only the first N tokens of each space")->check(CLI::PositiveNumber);
}

void add_retrieval(CLI::App* sub, std::string& mode, std::size_t& csls_k) {
  sub->add_option("--retrieval", mode, "Retrieval score")->check(CLI::IsMember({"cosine", "csls"}))->capture_default_str();
  sub->add_option("--csls-k", csls_k, "CSLS neighbourhood size")->check(CLI::PositiveNumber)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-lingual embedding alignment and meeting-in-the-middle refinement"};
  app.footer("Any subcommand accepts --config FILE with key=value lines (e.g. src=en.vec); flags override it.");
  app.require_subcommand(1);

  AlignArgs align;
  auto* align_cmd = app.add_subcommand("align", "Orthogonally map the source space onto the target space");
  add_spaces(align_cmd, align.spaces, true);
  align_cmd->add_option("--dict", align.dict, "Training dictionary")->required()->check(CLI::ExistingFile);
  align_cmd->add_option("--out", align.out, "Output directory")->required();
  align_cmd->add_option("--normalize", align.normalize, "Comma-separated steps from {unit, center}, or none")
      ->capture_default_str();
  align_cmd->add_flag("--self-learning", align.self_learning, "Iterate fitting and dictionary induction");
  align_cmd->add_option("--max-iter", align.max_iter, "Self-learning iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  align_cmd->add_option("--tol", align.tol, "Self-learning convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  align_cmd->add_option("--induction-cap", align.induction_cap, "Tokens per side used for induction")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  RefineArgs refine;
  auto* refine_cmd = app.add_subcommand("refine", "Learn and apply the maps toward the cross-lingual averages");
  add_spaces(refine_cmd, refine.spaces, true);
  refine_cmd->add_option("--dict", refine.dict, "Dictionary of translation pairs")->required()->check(CLI::ExistingFile);
  refine_cmd->add_option("--out", refine.out, "Output directory")->required();
  refine_cmd->add_option("--map", refine.map, "Alignment map to carry along")->check(CLI::ExistingFile);

  InduceArgs induce;
  auto* induce_cmd = app.add_subcommand("induce", "Induce a dictionary by nearest neighbours in aligned spaces");
  add_spaces(induce_cmd, induce.spaces, true);
  induce_cmd->add_option("--out", induce.out, "Output dictionary file")->required();
  induce_cmd->add_option("--induction-cap", induce.induction_cap, "Tokens per side")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate embeddings");
  eval_cmd->require_subcommand(1);
  auto add_eval_common = [&](CLI::App* sub, bool need_tgt) {
    add_spaces(sub, eval.spaces, need_tgt);
    add_retrieval(sub, eval.retrieval, eval.csls_k);
    sub->add_option("--format", eval.format, "Report format")->check(CLI::IsMember({"text", "tsv"}))->capture_default_str();
    sub->add_option("--out", eval.out, "Also write the report as key<TAB>value lines");
  };
  auto* bli_cmd = eval_cmd->add_subcommand("bli", "Bilingual dictionary induction, P@k");
  add_eval_common(bli_cmd, true);
  bli_cmd->add_option("--test", eval.test, "Test dictionary")->required()->check(CLI::ExistingFile);
  bli_cmd->add_option("--k", eval.ks, "Comma-separated cutoffs")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* sim_cmd = eval_cmd->add_subcommand("sim", "Word similarity, Pearson and Spearman");
  add_eval_common(sim_cmd, false);
  sim_cmd->add_option("--dataset", eval.dataset, "Similarity dataset")->required()->check(CLI::ExistingFile);
  sim_cmd->add_flag("--cross", eval.cross, "First word from --src, second from --tgt");
  sim_cmd->add_option("--side", eval.side, "Space for monolingual similarity")->check(CLI::IsMember({"src", "tgt"}));

  auto* hyper_cmd = eval_cmd->add_subcommand("hyper", "Hypernym discovery, MRR/MAP/P@5");
  add_eval_common(hyper_cmd, false);
  hyper_cmd->add_option("--train", eval.train, "Training pairs in the source space")->required()->check(CLI::ExistingFile);
  hyper_cmd->add_option("--train-tgt", eval.train_tgt, "Extra training pairs in the target space")
      ->check(CLI::ExistingFile);
  hyper_cmd->add_option("--test", eval.test, "Test queries")->required()->check(CLI::ExistingFile);
  hyper_cmd->add_option("--query-space", eval.query_space, "Space of test queries (default tgt if given)")
      ->check(CLI::IsMember({"src", "tgt"}));
  hyper_cmd->add_option("--candidate-space", eval.candidate_space, "Space searched for hypernyms")
      ->check(CLI::IsMember({"src", "tgt"}));
  hyper_cmd->add_option("--k", eval.hyper_k, "Candidate list length")->check(CLI::PositiveNumber)->capture_default_str();

  InspectArgs inspect;
  auto* inspect_cmd = app.add_subcommand("inspect", "Print the nearest neighbours of a word");
  add_spaces(inspect_cmd, inspect.spaces, false);
  inspect_cmd->add_option("--word", inspect.word, "Query word")->required();
  inspect_cmd->add_option("--k", inspect.k, "Number of neighbours")->check(CLI::PositiveNumber)->capture_default_str();
  inspect_cmd->add_option("--from", inspect.from, "Space holding the query word")->check(CLI::IsMember({"src", "tgt"}));
  inspect_cmd->add_flag("--within", inspect.within, "Search the query's own space");
  add_retrieval(inspect_cmd, inspect.retrieval, inspect.csls_k);

  FixtureArgs fixture;
  auto* fixture_cmd = app.add_subcommand("fixture", "Write a synthetic benchmark");
  fixture_cmd->add_option("--kind", fixture.kind, "Fixture type")
      ->check(CLI::IsMember({"rotated", "taxonomy", "hub"}))
      ->capture_default_str();
  fixture_cmd->add_option("--vocab", fixture.vocab, "Vocabulary size")->check(CLI::PositiveNumber)->capture_default_str();
  fixture_cmd->add_option("--dim", fixture.dim, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
  fixture_cmd->add_option("--sigma", fixture.sigma, "Target-side Gaussian noise")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  fixture_cmd->add_option("--seed", fixture.seed, "Random seed")->capture_default_str();
  fixture_cmd->add_option("--train", fixture.n_train, "Training pairs (rotated)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fixture_cmd->add_option("--test", fixture.n_test, "Cap on test pairs, 0 for all (rotated)")->capture_default_str();
  fixture_cmd->add_flag("--shared-vocab", fixture.shared_vocab, "Use the same token strings on both sides");
  fixture_cmd->add_option("--out", fixture.out, "Output directory")->required();

  std::vector<std::string> args;
  try {
    args = expand_config(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const std::exception& e) {
    std::cerr << "meemi: " << e.what() << '\n';
    return 2;
  }
  // CLI11 expects the arguments in reverse order.
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*align_cmd) return cmd_align(align, std::cout);
    if (*refine_cmd) return cmd_refine(refine, std::cout);
    if (*induce_cmd) return cmd_induce(induce, std::cout);
    if (*bli_cmd) return cmd_eval_bli(eval, std::cout);
    if (*sim_cmd) return cmd_eval_sim(eval, std::cout);
    if (*hyper_cmd) return cmd_eval_hyper(eval, std::cout);
    if (*inspect_cmd) return cmd_inspect(inspect, std::cout);
    if (*fixture_cmd) return cmd_fixture(fixture, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "meemi: error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
