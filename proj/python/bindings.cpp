#include "meemi/meemi.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace meemi;

namespace {

std::vector<NormalizationStep> steps_from(const py::object& normalize) {
  if (normalize.is_none()) return {};
  if (py::isinstance<py::str>(normalize)) return parse_normalization(normalize.cast<std::string>());
  std::vector<NormalizationStep> steps;
  for (const auto& item : normalize) {
    const auto parsed = parse_normalization(item.cast<std::string>());
    steps.insert(steps.end(), parsed.begin(), parsed.end());
  }
  return steps;
}

PairedData paired(const Matrix& inputs, const Matrix& targets) { return PairedData(inputs, targets); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the meemi package";

  // Translators run newest first, so the subclass is registered last.
  const auto& base = py::register_exception<Error>(m, "MeemiError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<EmbeddingSpace>(m, "EmbeddingSpace")
      .def(py::init<std::vector<std::string>, Matrix>(), py::arg("vocab"), py::arg("matrix"))
      .def_property_readonly("vocab", &EmbeddingSpace::vocab)
      .def_property_readonly("matrix", &EmbeddingSpace::matrix)
      .def_property_readonly("dim", &EmbeddingSpace::dim)
      .def("find", &EmbeddingSpace::find, py::arg("token"))
      .def("lookup", &EmbeddingSpace::lookup, py::arg("token"))
      .def("__len__", &EmbeddingSpace::size)
      .def("__contains__", [](const EmbeddingSpace& s, const std::string& t) { return s.find(t).has_value(); })
      .def("__repr__", [](const EmbeddingSpace& s) {
        return "<EmbeddingSpace " + std::to_string(s.size()) + "x" + std::to_string(s.dim()) + ">";
      });

  m.def("load_space", [](const std::filesystem::path& p, std::optional<std::size_t> limit) { return load_space(p, limit); },
        py::arg("path"), py::arg("limit") = py::none());
  m.def("save_space", &save_space, py::arg("space"), py::arg("path"));
  m.def("normalize_unit", &normalize_unit, py::arg("space"));
  m.def("mean_center", &mean_center, py::arg("space"));

  py::class_<BilingualLexicon>(m, "BilingualLexicon")
      .def(py::init<>())
      .def(py::init([](const std::vector<std::pair<std::string, std::string>>& pairs) {
             BilingualLexicon lex;
             for (const auto& [s, t] : pairs) lex.add({s, t});
             return lex;
           }),
           py::arg("pairs"))
      .def("add", [](BilingualLexicon& lex, std::string s, std::string t) { return lex.add({std::move(s), std::move(t)}); })
      .def("pairs",
           [](const BilingualLexicon& lex) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& p : lex.pairs()) out.emplace_back(p.source, p.target);
             return out;
           })
      .def("__len__", &BilingualLexicon::size);
  m.def("load_lexicon", &load_lexicon, py::arg("path"));

  py::class_<SimilarityDataset>(m, "SimilarityDataset")
      .def(py::init([](const std::vector<std::tuple<std::string, std::string, double>>& rows) {
             SimilarityDataset d;
             for (const auto& [a, b, g] : rows) d.triples.push_back({a, b, g});
             return d;
           }),
           py::arg("triples"))
      .def("__len__", [](const SimilarityDataset& d) { return d.triples.size(); });
  m.def("load_similarity", &load_similarity, py::arg("path"));

  py::class_<LinearMap>(m, "LinearMap")
      .def(py::init<Matrix, bool>(), py::arg("matrix"), py::arg("orthogonal") = false)
      .def_property_readonly("matrix", &LinearMap::matrix)
      .def_property_readonly("orthogonal", &LinearMap::orthogonal);
  m.def("fit_procrustes", [](const Matrix& a, const Matrix& b) { return fit_procrustes(paired(a, b)); },
        py::arg("inputs"), py::arg("targets"));
  m.def("fit_least_squares", [](const Matrix& a, const Matrix& b) { return fit_least_squares(paired(a, b)); },
        py::arg("inputs"), py::arg("targets"));
  m.def("apply_map", &apply_map, py::arg("map"), py::arg("space"));

  py::class_<AlignmentConfig>(m, "AlignmentConfig")
      .def(py::init([](const py::object& normalize, bool self_learning, std::size_t max_iterations, double tol,
                       std::size_t cap) {
             AlignmentConfig c;
             c.normalize = steps_from(normalize);
             c.self_learning = self_learning;
             c.max_iterations = max_iterations;
             c.convergence_tol = tol;
             c.induction_vocab_cap = cap;
             c.validate();
             return c;
           }),
           py::arg("normalize") = "unit,center,unit", py::arg("self_learning") = false,
           py::arg("max_iterations") = 50, py::arg("convergence_tol") = 1e-6,
           py::arg("induction_vocab_cap") = 20000)
      .def_readwrite("self_learning", &AlignmentConfig::self_learning)
      .def_readwrite("max_iterations", &AlignmentConfig::max_iterations)
      .def_readwrite("convergence_tol", &AlignmentConfig::convergence_tol)
      .def_readwrite("induction_vocab_cap", &AlignmentConfig::induction_vocab_cap);

  py::class_<AlignedPair>(m, "AlignedPair")
      .def(py::init([](EmbeddingSpace s, EmbeddingSpace t) {
             const std::size_t d = s.dim();
             return AlignedPair{std::move(s), std::move(t), LinearMap::identity(d), 0};
           }),
           py::arg("source"), py::arg("target"))
      .def_readonly("source", &AlignedPair::source)
      .def_readonly("target", &AlignedPair::target)
      .def_readonly("map", &AlignedPair::map)
      .def_readonly("iterations_run", &AlignedPair::iterations_run);
  m.def("align_supervised", &align_supervised, py::arg("source"), py::arg("target"), py::arg("lexicon"),
        py::arg("config") = AlignmentConfig{});

  py::class_<MeemiModel>(m, "MeemiModel")
      .def_readonly("map_source", &MeemiModel::map_source)
      .def_readonly("map_target", &MeemiModel::map_target)
      .def_readonly("train_pair_count", &MeemiModel::train_pair_count);
  m.def("fit_meemi", &fit_meemi, py::arg("aligned"), py::arg("lexicon"));
  m.def("apply_meemi", &apply_meemi, py::arg("model"), py::arg("aligned"));

  py::class_<SimilarityShift>(m, "SimilarityShift")
      .def_readonly("mean_delta", &SimilarityShift::mean_delta)
      .def_readonly("std_delta", &SimilarityShift::std_delta)
      .def_readonly("fraction_positive", &SimilarityShift::fraction_positive)
      .def_readonly("pairs", &SimilarityShift::pairs);
  m.def("similarity_shift_report", &similarity_shift_report, py::arg("before"), py::arg("after"), py::arg("lexicon"));

  py::class_<EvalReport>(m, "EvalReport")
      .def_property_readonly("task", [](const EvalReport& r) { return std::string(to_string(r.task)); })
      .def_readonly("dataset", &EvalReport::dataset)
      .def_property_readonly("retrieval", [](const EvalReport& r) { return std::string(to_string(r.retrieval)); })
      .def_property_readonly("metrics",
                             [](const EvalReport& r) {
                               py::dict d;
                               for (const auto& [k, v] : r.metrics) d[py::str(k)] = v;
                               return d;
                             })
      .def_readonly("resolved", &EvalReport::resolved)
      .def_readonly("total", &EvalReport::total)
      .def("metric", &EvalReport::metric)
      .def("__str__", &format_text);
  m.def(
      "eval_bli",
      [](const AlignedPair& aligned, const BilingualLexicon& test, const std::string& retrieval, std::size_t csls_k,
         std::vector<std::size_t> ks) {
        return eval_bli(aligned, test, RetrievalSettings{parse_retrieval_mode(retrieval), csls_k}, ks);
      },
      py::arg("aligned"), py::arg("test"), py::arg("retrieval") = "cosine",
      py::arg("csls_k") = RetrievalIndex::kDefaultCslsK, py::arg("ks") = std::vector<std::size_t>{1, 5, 10});
  m.def(
      "eval_similarity",
      [](const EmbeddingSpace& a, const std::optional<EmbeddingSpace>& b, const SimilarityDataset& data) {
        return eval_similarity(a, b ? *b : a, data);
      },
      py::arg("space_a"), py::arg("space_b") = py::none(), py::arg("dataset"));
  m.def("pearson", [](std::vector<double> x, std::vector<double> y) { return pearson(x, y); });
  m.def("spearman", [](std::vector<double> x, std::vector<double> y) { return spearman(x, y); });

  py::class_<Neighbor>(m, "Neighbor")
      .def_readonly("index", &Neighbor::index)
      .def_readonly("score", &Neighbor::score)
      .def("__repr__", [](const Neighbor& n) {
        return "Neighbor(" + std::to_string(n.index) + ", " + format_real(n.score) + ")";
      });
  m.def(
      "knn",
      [](const EmbeddingSpace& targets, const RowVector& query, std::size_t k, const std::string& mode,
         std::size_t csls_k) {
        const RetrievalMode parsed = parse_retrieval_mode(mode);
        const RetrievalIndex index =
            parsed == RetrievalMode::csls ? RetrievalIndex(targets, csls_k) : RetrievalIndex::cosine_only(targets);
        return knn(index, query, k, parsed);
      },
      py::arg("targets"), py::arg("query"), py::arg("k"), py::arg("mode") = "cosine",
      py::arg("csls_k") = RetrievalIndex::kDefaultCslsK);

  py::class_<RotatedPair>(m, "RotatedPair")
      .def_readonly("source", &RotatedPair::source)
      .def_readonly("target", &RotatedPair::target)
      .def_readonly("gold", &RotatedPair::gold)
      .def_readonly("rotation", &RotatedPair::rotation);
  m.def(
      "make_rotated_pair",
      [](std::size_t vocab_size, std::size_t dim, double sigma, std::uint64_t seed, bool shared_vocab) {
        return make_rotated_pair(SyntheticSpec{vocab_size, dim, sigma, seed, shared_vocab});
      },
      py::arg("vocab_size") = 1000, py::arg("dim") = 50, py::arg("noise_sigma") = 0.0, py::arg("seed") = 42,
      py::arg("shared_vocab") = false);
}
