#pragma once

#include "meemi/meemi.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace meemi::cli {

struct SpaceArgs {
  std::string src;
  std::string tgt;
  std::optional<std::size_t> limit;
};

struct AlignArgs {
  SpaceArgs spaces;
  std::string dict;
  std::string out;
  std::string normalize = "unit,center,unit";
  bool self_learning = false;
  std::size_t max_iter = 50;
  double tol = 1e-6;
  std::size_t induction_cap = 20000;
};

struct RefineArgs {
  SpaceArgs spaces;
  std::string dict;
  std::string out;
  std::string map;  // optional alignment map carried along
};

struct InduceArgs {
  SpaceArgs spaces;
  std::string out;
  std::size_t induction_cap = 20000;
};

struct EvalArgs {
  SpaceArgs spaces;
  std::string retrieval = "cosine";
  std::size_t csls_k = RetrievalIndex::kDefaultCslsK;
  std::string format = "text";
  std::string out;
  // bli
  std::string test;
  std::vector<std::size_t> ks{1, 5, 10};
  // sim
  std::string dataset;
  bool cross = false;
  std::string side = "src";
  // hyper
  std::string train;
  std::string train_tgt;
  std::string query_space;
  std::string candidate_space;
  std::size_t hyper_k = 15;
};

struct InspectArgs {
  SpaceArgs spaces;
  std::string word;
  std::size_t k = 10;
  std::string from = "src";
  bool within = false;
  std::string retrieval = "cosine";
  std::size_t csls_k = RetrievalIndex::kDefaultCslsK;
};

struct FixtureArgs {
  std::string kind = "rotated";
  std::size_t vocab = 1000;
  std::size_t dim = 50;
  double sigma = 0.0;
  std::uint64_t seed = 42;
  std::size_t n_train = 100;
  std::size_t n_test = 0;  // 0 keeps every remaining pair
  bool shared_vocab = false;
  std::string out;
};

/// Replaces `--config FILE` with the file's `key=value` lines as `--key value`
/// arguments, skipping keys already given as flags. `true` yields a bare
/// flag and `false` drops the key.
std::vector<std::string> expand_config(std::vector<std::string> args);

// Each command returns a process exit code and reports to `out`.
int cmd_align(const AlignArgs& args, std::ostream& out);
int cmd_refine(const RefineArgs& args, std::ostream& out);
int cmd_induce(const InduceArgs& args, std::ostream& out);
int cmd_eval_bli(const EvalArgs& args, std::ostream& out);
int cmd_eval_sim(const EvalArgs& args, std::ostream& out);
int cmd_eval_hyper(const EvalArgs& args, std::ostream& out);
int cmd_inspect(const InspectArgs& args, std::ostream& out);
int cmd_fixture(const FixtureArgs& args, std::ostream& out);

}  // namespace meemi::cli
