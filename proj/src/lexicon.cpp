#include "meemi/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <unordered_map>

namespace meemi {

BilingualLexicon::BilingualLexicon(std::vector<TranslationPair> pairs) {
  for (auto& p : pairs) add(std::move(p));
}

bool BilingualLexicon::add(TranslationPair pair) {
  if (!seen_.emplace(pair.source, pair.target).second) return false;
  pairs_.push_back(std::move(pair));
  return true;
}

namespace {

std::ifstream open_input(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw Error(std::string("cannot open ") + what + " file: " + path.string());
  return in;
}

}  // namespace

BilingualLexicon load_lexicon(const std::filesystem::path& path) {
  auto in = open_input(path, "dictionary");
  BilingualLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = strip_cr(line);
    if (is_comment_or_blank(text)) continue;
    auto fields = split_whitespace(text);
    if (fields.size() != 2) {
      throw ParseError(path.string(), line_no,
                       "expected 2 fields (source target), found " + std::to_string(fields.size()));
    }
    lexicon.add({std::string(fields[0]), std::string(fields[1])});
  }
  if (lexicon.empty()) throw Error("no translation pairs in dictionary: " + path.string());
  return lexicon;
}

void save_lexicon(const BilingualLexicon& lexicon, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write dictionary: " + path.string());
  for (const auto& p : lexicon.pairs()) out << p.source << '\t' << p.target << '\n';
  out.flush();
  if (!out) throw Error("write failed: " + path.string());
}

ResolvedLexicon resolve(const BilingualLexicon& lexicon, const EmbeddingSpace& source,
                        const EmbeddingSpace& target) {
  ResolvedLexicon out;
  out.total = lexicon.size();
  for (const auto& p : lexicon.pairs()) {
    auto s = source.find(p.source);
    auto t = target.find(p.target);
    if (!s || !t) continue;
    out.lexicon.add(p);
    out.rows.push_back({*s, *t});
  }
  if (out.rows.empty()) {
    throw Error("no dictionary pair resolves in the embedding vocabularies (0 of " +
                std::to_string(out.total) + ")");
  }
  out.coverage = static_cast<double>(out.rows.size()) / static_cast<double>(out.total);
  return out;
}

SimilarityDataset load_similarity(const std::filesystem::path& path) {
  auto in = open_input(path, "similarity");
  SimilarityDataset data;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = strip_cr(line);
    if (is_comment_or_blank(text)) continue;
    auto fields = split_whitespace(text);
    if (fields.size() != 3) {
      throw ParseError(path.string(), line_no,
                       "expected 3 fields (word word score), found " + std::to_string(fields.size()));
    }
    auto score = parse_real(fields[2]);
    if (!score || !std::isfinite(*score)) {
      throw ParseError(path.string(), line_no, "non-numeric score '" + std::string(fields[2]) + "'");
    }
    data.triples.push_back({std::string(fields[0]), std::string(fields[1]), *score});
  }
  if (data.triples.empty()) throw Error("no triples in similarity dataset: " + path.string());
  return data;
}

HypernymDataset load_hypernyms(const std::filesystem::path& path) {
  auto in = open_input(path, "hypernym");
  HypernymDataset data;
  std::unordered_map<std::string, std::size_t> by_query;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = strip_cr(line);
    if (is_comment_or_blank(text)) continue;
    auto fields = split_tabs(text);
    if (fields.size() < 2) {
      throw ParseError(path.string(), line_no, "expected a query and at least one hypernym");
    }
    std::string query(fields[0]);
    auto [it, inserted] = by_query.emplace(query, data.entries.size());
    if (inserted) data.entries.push_back({query, {}});
    auto& golds = data.entries[it->second].hypernyms;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      std::string h(fields[i]);
      if (std::find(golds.begin(), golds.end(), h) == golds.end()) golds.push_back(std::move(h));
    }
  }
  if (data.entries.empty()) throw Error("no entries in hypernym dataset: " + path.string());
  return data;
}

void save_hypernyms(const HypernymDataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write hypernym file: " + path.string());
  for (const auto& e : dataset.entries) {
    out << e.query;
    for (const auto& h : e.hypernyms) out << '\t' << h;
    out << '\n';
  }
  out.flush();
  if (!out) throw Error("write failed: " + path.string());
}

LexiconSplit split_lexicon(const BilingualLexicon& lexicon, std::size_t n_train, std::uint64_t seed) {
  const auto& pairs = lexicon.pairs();
  if (n_train == 0 || n_train >= pairs.size()) {
    throw Error("n_train must lie in (0, " + std::to_string(pairs.size()) + "), got " +
                std::to_string(n_train));
  }

  std::unordered_map<std::string, std::size_t> group_of;
  std::vector<std::size_t> group_sizes;
  std::vector<std::size_t> pair_group(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [it, inserted] = group_of.emplace(pairs[i].source, group_sizes.size());
    if (inserted) group_sizes.push_back(0);
    ++group_sizes[it->second];
    pair_group[i] = it->second;
  }

  std::vector<std::size_t> order(group_sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<char> in_train(group_sizes.size(), 0);
  std::size_t taken = 0;
  for (auto g : order) {
    if (taken >= n_train) break;
    in_train[g] = 1;
    taken += group_sizes[g];
  }
  if (taken == pairs.size()) {
    throw Error("split leaves no test pairs: source groups are too coarse for n_train=" +
                std::to_string(n_train));
  }

  LexiconSplit split;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    (in_train[pair_group[i]] ? split.train : split.test).add(pairs[i]);
  }
  return split;
}

}  // namespace meemi
