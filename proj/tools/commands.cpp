#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>
#include <utility>

namespace fs = std::filesystem;

namespace meemi::cli {

namespace {

using Rows = std::vector<std::pair<std::string, std::string>>;

void print_rows(std::ostream& out, const Rows& rows) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [key, value] : rows) out << key << std::string(width - key.size() + 2, ' ') << value << '\n';
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

EmbeddingSpace load(const std::string& path, const std::optional<std::size_t>& limit) {
  LoadStats stats;
  EmbeddingSpace space = load_space(path, limit, &stats);
  if (stats.duplicates_skipped > 0) {
    std::cerr << "meemi: warning: " << path << ": kept the first of " << stats.duplicates_skipped
              << " duplicate token row(s)\n";
  }
  return space;
}

void emit_report(const EvalReport& report, const EvalArgs& args, std::ostream& out) {
  out << (args.format == "tsv" ? format_tsv(report) : format_text(report));
  if (!args.out.empty()) {
    std::ofstream file(args.out, std::ios::binary | std::ios::trunc);
    if (!file) throw Error("cannot write report: " + args.out);
    file << format_tsv(report);
    if (!file) throw Error("write failed: " + args.out);
  }
}

}  // namespace

std::vector<std::string> expand_config(std::vector<std::string> args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (std::next(it) == args.end()) throw Error("--config needs a file argument");
  const std::string path = *std::next(it);
  args.erase(it, std::next(it, 2));

  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = strip_cr(line);
    if (is_comment_or_blank(text)) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(path, line_no, "expected key=value");
    auto trim = [](std::string_view v) {
      while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
      while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
      return std::string(v);
    };
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ParseError(path, line_no, "empty key");
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given || value == "false") continue;
    args.push_back(flag);
    if (value != "true") args.push_back(value);
  }
  return args;
}

int cmd_align(const AlignArgs& args, std::ostream& out) {
  AlignmentConfig config;
  config.normalize = parse_normalization(args.normalize);
  config.self_learning = args.self_learning;
  config.max_iterations = args.max_iter;
  config.convergence_tol = args.tol;
  config.induction_vocab_cap = args.induction_cap;
  config.validate();

  const EmbeddingSpace src = load(args.spaces.src, args.spaces.limit);
  const EmbeddingSpace tgt = load(args.spaces.tgt, args.spaces.limit);
  const BilingualLexicon dict = load_lexicon(args.dict);
  const ResolvedLexicon resolved = resolve(dict, src, tgt);

  const AlignedPair aligned = align_supervised(src, tgt, dict, config);
  const fs::path dir = prepare_dir(args.out);
  save_space(aligned.source, dir / "src.mapped.vec");
  save_space(aligned.target, dir / "tgt.normalized.vec");
  save_map(aligned.map, dir / "align.map");

  print_rows(out, {{"pairs", std::to_string(resolved.rows.size()) + "/" + std::to_string(resolved.total)},
                   {"coverage", fixed(resolved.coverage)},
                   {"normalize", format_normalization(config.normalize)},
                   {"self_learning", config.self_learning ? "yes" : "no"},
                   {"iterations", std::to_string(aligned.iterations_run)}});
  return 0;
}

int cmd_refine(const RefineArgs& args, std::ostream& out) {
  EmbeddingSpace src = load(args.spaces.src, args.spaces.limit);
  EmbeddingSpace tgt = load(args.spaces.tgt, args.spaces.limit);
  if (src.dim() != tgt.dim()) throw Error("aligned spaces differ in dimension");
  LinearMap map = args.map.empty() ? LinearMap::identity(src.dim()) : load_map(args.map);
  const BilingualLexicon dict = load_lexicon(args.dict);

  const AlignedPair before{std::move(src), std::move(tgt), std::move(map), 0};
  const MeemiModel model = fit_meemi(before, dict);
  const AlignedPair after = apply_meemi(model, before);
  const SimilarityShift shift = similarity_shift_report(before, after, dict);

  const fs::path dir = prepare_dir(args.out);
  save_space(after.source, dir / "src.refined.vec");
  save_space(after.target, dir / "tgt.refined.vec");
  save_model(model, dir / "meemi.model", "meemi.src.map", "meemi.tgt.map");

  print_rows(out, {{"pairs", std::to_string(model.train_pair_count) + "/" + std::to_string(dict.size())},
                   {"mean_delta", fixed(shift.mean_delta)},
                   {"std_delta", fixed(shift.std_delta)},
                   {"fraction_positive", fixed(shift.fraction_positive)}});
  return 0;
}

int cmd_induce(const InduceArgs& args, std::ostream& out) {
  const EmbeddingSpace src = load(args.spaces.src, args.spaces.limit);
  const EmbeddingSpace tgt = load(args.spaces.tgt, args.spaces.limit);
  const InducedDictionary induced = induce_nearest(src, tgt, args.induction_cap);
  save_lexicon(induced.lexicon, args.out);
  print_rows(out, {{"pairs", std::to_string(induced.lexicon.size())}, {"mean_cosine", fixed(induced.mean_cosine)}});
  return 0;
}

int cmd_eval_bli(const EvalArgs& args, std::ostream& out) {
  EmbeddingSpace src = load(args.spaces.src, args.spaces.limit);
  EmbeddingSpace tgt = load(args.spaces.tgt, args.spaces.limit);
  if (src.dim() != tgt.dim()) throw Error("spaces differ in dimension");
  const std::size_t d = src.dim();
  const AlignedPair aligned{std::move(src), std::move(tgt), LinearMap::identity(d), 0};
  const BilingualLexicon test = load_lexicon(args.test);
  const RetrievalSettings settings{parse_retrieval_mode(args.retrieval), args.csls_k};
  emit_report(eval_bli(aligned, test, settings, args.ks, fs::path(args.test).filename().string()), args, out);
  return 0;
}

int cmd_eval_sim(const EvalArgs& args, std::ostream& out) {
  const SimilarityDataset data = load_similarity(args.dataset);
  const std::string name = fs::path(args.dataset).filename().string();
  if (args.cross) {
    if (args.spaces.tgt.empty()) throw Error("--cross needs both --src and --tgt");
    const EmbeddingSpace a = load(args.spaces.src, args.spaces.limit);
    const EmbeddingSpace b = load(args.spaces.tgt, args.spaces.limit);
    emit_report(eval_similarity(a, b, data, name), args, out);
  } else {
    const std::string& path = args.side == "tgt" ? args.spaces.tgt : args.spaces.src;
    if (path.empty()) throw Error("--side " + args.side + " needs the corresponding space path");
    const EmbeddingSpace a = load(path, args.spaces.limit);
    emit_report(eval_similarity(a, a, data, name), args, out);
  }
  return 0;
}

int cmd_eval_hyper(const EvalArgs& args, std::ostream& out) {
  const EmbeddingSpace src = load(args.spaces.src, args.spaces.limit);
  std::optional<EmbeddingSpace> tgt;
  if (!args.spaces.tgt.empty()) tgt.emplace(load(args.spaces.tgt, args.spaces.limit));

  auto pick = [&](const std::string& side) -> const EmbeddingSpace& {
    if (side == "src") return src;
    if (!tgt) throw Error("--tgt is required for the target-language side");
    return *tgt;
  };
  const std::string query_side = args.query_space.empty() ? (tgt ? "tgt" : "src") : args.query_space;
  const std::string candidate_side = args.candidate_space.empty() ? query_side : args.candidate_space;

  const HypernymDataset train = load_hypernyms(args.train);
  std::vector<HypernymTrainingSource> sources{{&src, &train}};
  std::optional<HypernymDataset> extra;
  if (!args.train_tgt.empty()) {
    extra.emplace(load_hypernyms(args.train_tgt));
    sources.push_back({&pick("tgt"), &*extra});
  }
  const LinearMap projection = fit_hypernym_projection(sources);
  const HypernymDataset test = load_hypernyms(args.test);
  HypernymSettings settings;
  settings.k = args.hyper_k;
  settings.retrieval = {parse_retrieval_mode(args.retrieval), args.csls_k};
  emit_report(eval_hypernyms(pick(query_side), pick(candidate_side), projection, test, settings,
                             fs::path(args.test).filename().string()),
              args, out);
  return 0;
}

int cmd_inspect(const InspectArgs& args, std::ostream& out) {
  const EmbeddingSpace src = load(args.spaces.src, args.spaces.limit);
  std::optional<EmbeddingSpace> tgt;
  if (!args.spaces.tgt.empty()) tgt.emplace(load(args.spaces.tgt, args.spaces.limit));
  if (args.from == "tgt" && !tgt) throw Error("--from tgt needs --tgt");

  const EmbeddingSpace& query_space = args.from == "tgt" ? *tgt : src;
  const EmbeddingSpace* other = args.from == "tgt" ? &src : (tgt ? &*tgt : nullptr);
  const EmbeddingSpace& candidates = (args.within || !other) ? query_space : *other;

  auto row = query_space.find(args.word);
  if (!row) throw Error("'" + args.word + "' is not in the vocabulary");
  const RowVector query = query_space.matrix().row(static_cast<Eigen::Index>(*row));

  const RetrievalMode mode = parse_retrieval_mode(args.retrieval);
  const RetrievalIndex index = mode == RetrievalMode::cosine
                                   ? RetrievalIndex::cosine_only(candidates)
                                   : (&candidates == &query_space ? RetrievalIndex(candidates, args.csls_k)
                                                                  : RetrievalIndex(candidates, query_space, args.csls_k));
  const auto neighbours = knn(index, query, args.k, mode);
  std::size_t rank = 0;
  for (const auto& n : neighbours) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", n.score);
    out << ++rank << '\t' << candidates.token(n.index) << '\t' << buf << '\n';
  }
  return 0;
}

int cmd_fixture(const FixtureArgs& args, std::ostream& out) {
  SyntheticSpec spec;
  spec.vocab_size = args.vocab;
  spec.dim = args.dim;
  spec.noise_sigma = args.sigma;
  spec.seed = args.seed;
  spec.shared_vocab = args.shared_vocab;
  const fs::path dir = prepare_dir(args.out);

  if (args.kind == "rotated") {
    const RotatedPair pair = make_rotated_pair(spec);
    LexiconSplit split = split_lexicon(pair.gold, args.n_train, args.seed);
    BilingualLexicon test;
    for (const auto& p : split.test.pairs()) {
      if (args.n_test != 0 && test.size() == args.n_test) break;
      test.add(p);
    }
    save_space(pair.source, dir / "src.vec");
    save_space(pair.target, dir / "tgt.vec");
    save_lexicon(split.train, dir / "train.dict");
    save_lexicon(test, dir / "test.dict");
    save_map(pair.rotation, dir / "rotation.map");
    print_rows(out, {{"kind", "rotated"},
                     {"train_pairs", std::to_string(split.train.size())},
                     {"test_pairs", std::to_string(test.size())}});
  } else if (args.kind == "taxonomy") {
    const Taxonomy tax = make_taxonomy(spec);
    save_space(tax.space, dir / "space.vec");
    save_hypernyms(tax.train, dir / "train.tsv");
    save_hypernyms(tax.test, dir / "test.tsv");
    save_map(tax.true_map, dir / "true.map");
    print_rows(out, {{"kind", "taxonomy"},
                     {"train_queries", std::to_string(tax.train.entries.size())},
                     {"test_queries", std::to_string(tax.test.entries.size())}});
  } else if (args.kind == "hub") {
    const HubSet hub = make_hub_set(args.seed);
    save_space(hub.targets, dir / "targets.vec");
    save_space(hub.queries, dir / "queries.vec");
    print_rows(out, {{"kind", "hub"}, {"hub", hub.targets.token(hub.hub)}});
  } else {
    throw Error("unknown fixture kind '" + args.kind + "'");
  }
  return 0;
}

}  // namespace meemi::cli
