"""Validation and study statistics: alignment metrics, rank tests, agreement."""

from .alignment import (
    AlignmentOp,
    AlignmentReport,
    GoldEntry,
    GoldSet,
    MetricValue,
    MetricsReport,
    align_predictions,
    load_gold_set,
    nw_align,
    sequence_metrics,
)
from .instruments import seq_score, sus_score, ueqs_scores
from .irr import (
    AgreementStats,
    KappaResult,
    RatingGrid,
    agreement_stats,
    kappa_by_dimension,
    load_rating_grid,
    max_step_delta,
    spearman_rho,
    weighted_kappa,
)
from .nonparametric import (
    BootstrapCI,
    bootstrap_ci,
    holm_adjust,
    kruskal_wallis,
    mann_whitney,
    rank_biserial,
)
from .sampling import sample_counts, stratified_sample

__all__ = [
    "AgreementStats",
    "AlignmentOp",
    "AlignmentReport",
    "BootstrapCI",
    "GoldEntry",
    "GoldSet",
    "KappaResult",
    "MetricValue",
    "MetricsReport",
    "RatingGrid",
    "agreement_stats",
    "align_predictions",
    "bootstrap_ci",
    "holm_adjust",
    "kappa_by_dimension",
    "kruskal_wallis",
    "load_gold_set",
    "load_rating_grid",
    "mann_whitney",
    "max_step_delta",
    "nw_align",
    "rank_biserial",
    "sample_counts",
    "seq_score",
    "sequence_metrics",
    "spearman_rho",
    "stratified_sample",
    "sus_score",
    "ueqs_scores",
    "weighted_kappa",
]
