"""Density families, convergence reports, profiles and hypothesis checks."""

from .families import (
    CONVERSE_FAILS_MAX_N,
    FAMILIES,
    MAX_N,
    BoundedRatio,
    ConverseFails,
    CustomFamily,
    Family,
    FamilyNotFoundError,
    GhCounterexample,
    OrliczSpike,
    RangeError,
    ShrinkingUniform,
    generate,
    get_family,
    gh_alpha,
    limit,
    log_grid,
)
from .hypotheses import (
    CheckerSettings,
    CrossCheck,
    Verdict,
    bounded_domain_crosscheck,
    check_hypotheses,
    entropy_gap,
)
from .reports import (
    MOVING_ALPHA,
    DiagnosticsRow,
    GridError,
    ProfileTable,
    RangeSup,
    check_grid,
    convergence_report,
    integrand_l1_profile,
    map_members,
    report_frame,
    tightness_profile,
    ui_profile,
)
