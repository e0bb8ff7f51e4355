"""Analytics over mission corpora: flows, summaries, and cross-title views."""

from .compare import (
    CentroidRow,
    DendrogramNode,
    MotifCount,
    PcaMap,
    RadarNormalization,
    centroids,
    distance_matrix,
    merge_heights,
    motif_counts,
    normalize_radar,
    pca_map,
    top_counts,
    top_motifs,
    ward_dendrogram,
)
from .flows import (
    MissionSummary,
    QualityFlow,
    StoryboardBox,
    gaussian_smooth,
    interpolate_to_grid,
    mission_summary,
    quality_flow,
    storyboard,
)

__all__ = [
    "CentroidRow",
    "DendrogramNode",
    "MissionSummary",
    "MotifCount",
    "PcaMap",
    "QualityFlow",
    "RadarNormalization",
    "StoryboardBox",
    "centroids",
    "distance_matrix",
    "gaussian_smooth",
    "interpolate_to_grid",
    "merge_heights",
    "mission_summary",
    "motif_counts",
    "normalize_radar",
    "pca_map",
    "quality_flow",
    "storyboard",
    "top_counts",
    "top_motifs",
    "ward_dendrogram",
]
