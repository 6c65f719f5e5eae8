"""Measurement-induced non-locality of qubit states and its monogamy."""

from .monogamy import MonogamyReport, TangleSummary, monogamy_report, tangle, tangle_summary
from .montecarlo import CampaignConfig, CampaignStats, export_stats, run_campaign, verify_bounds
from .nonlocality import (
    CorrelationData,
    MinResult,
    correlation_data,
    min3_closed,
    min4_closed,
    min_2xn,
    min_bruteforce,
    min_pure,
)
from .qmat import (
    DensityMatrix,
    InputDomainError,
    PureState,
    SchmidtSpectrum,
    herm_eigvals,
    hs_norm_sq,
    kron,
    partial_trace,
    schmidt_spectrum,
)
from .states import (
    AcinParams,
    GenericCoeffs,
    SamplerSpec,
    acin_state,
    generic4_state,
    gghz_state,
    sample,
    special_state,
    w_state,
)

__version__ = "0.1.0"
