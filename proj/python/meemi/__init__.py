"""Cross-lingual embedding alignment and meeting-in-the-middle refinement."""

from ._core import (
    AlignedPair,
    AlignmentConfig,
    BilingualLexicon,
    EmbeddingSpace,
    EvalReport,
    MeemiError,
    LinearMap,
    MeemiModel,
    Neighbor,
    ParseError,
    RotatedPair,
    SimilarityDataset,
    SimilarityShift,
    align_supervised,
    apply_map,
    apply_meemi,
    eval_bli,
    eval_similarity,
    fit_least_squares,
    fit_meemi,
    fit_procrustes,
    knn,
    load_lexicon,
    load_similarity,
    load_space,
    make_rotated_pair,
    mean_center,
    normalize_unit,
    pearson,
    save_space,
    similarity_shift_report,
    spearman,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
