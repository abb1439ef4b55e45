"""Ordinal-pattern quantifiers and the complexity-entropy plane.

The package turns univariate series into ordinal pattern distributions,
maps them to (entropy, complexity) coordinates with theoretical bounds and
fractional-Brownian-motion baselines, tracks the coordinates over sliding
windows, and ranks series by informational efficiency with supporting
statistical tests.  See README.md for the CLI surface.
"""

__version__ = "0.1.0"

from .patterns import (
    OrdinalConfig,
    PatternDistribution,
    PatternId,
    TimeSeries,
    encode_window,
    extract_pattern_distribution,
)
from .quantifiers import (
    CecpPoint,
    cecp_point,
    disequilibrium,
    jensen_shannon_disequilibrium,
    jensen_shannon_divergence,
    normalized_entropy,
    q0_constant,
    shannon_entropy,
    statistical_complexity,
)
from .bounds import BoundCurve, lower_bound_curve, upper_bound_curve, within_bounds
from .fbm import (
    BaselineCloud,
    FbmSpec,
    baseline_cloud,
    fgn_autocovariance,
    generate_fbm,
    generate_fgn,
)
from .rolling import RollingResult, WindowParams, rolling_quantifiers, window_count
from .stats import (
    AnovaResult,
    AssetSummary,
    PairwiseComparison,
    RankingEntry,
    SpearmanResult,
    efficiency_distance,
    one_way_anova,
    pairwise_anova_vs_baseline,
    rank_assets,
    spearman_rho,
    summarize,
)
from .dataio import (
    AnalysisBundle,
    Dataset,
    RunConfig,
    emit_plot_data,
    load_dataset,
    log_return_series,
    make_synthetic_dataset,
    run_pipeline,
    write_bundle,
    write_dataset,
)

__all__ = [
    "__version__",
    "TimeSeries", "OrdinalConfig", "PatternId", "PatternDistribution",
    "encode_window", "extract_pattern_distribution",
    "CecpPoint", "cecp_point", "shannon_entropy", "normalized_entropy",
    "q0_constant", "jensen_shannon_divergence", "jensen_shannon_disequilibrium",
    "disequilibrium", "statistical_complexity",
    "BoundCurve", "lower_bound_curve", "upper_bound_curve", "within_bounds",
    "FbmSpec", "BaselineCloud", "fgn_autocovariance", "generate_fgn",
    "generate_fbm", "baseline_cloud",
    "WindowParams", "RollingResult", "window_count", "rolling_quantifiers",
    "AssetSummary", "RankingEntry", "AnovaResult", "PairwiseComparison",
    "SpearmanResult", "summarize", "efficiency_distance", "rank_assets",
    "one_way_anova", "pairwise_anova_vs_baseline", "spearman_rho",
    "Dataset", "RunConfig", "AnalysisBundle", "load_dataset", "write_dataset",
    "make_synthetic_dataset", "log_return_series", "run_pipeline",
    "write_bundle", "emit_plot_data",
]
