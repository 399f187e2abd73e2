"""cooprob: balanced cooperation-probability estimates for game tables.

A balanced player cooperates with odds proportional to the cooperation
weight and defects with odds proportional to the defection weight of their
game. The package classifies 2x2 and three-player payoff tables, solves the
proportional-balance equations in closed form, verifies every closed form
against a plain fixed-point iteration oracle, extends the estimate to
n-player dilemma ladders and two-sided (asymmetric) games, maps four
applied multi-option games onto pairwise tables, and checks or searches
payoff tables against design targets.
"""

from .applications import (
    AttritionSpec,
    ConjectureReport,
    DinerSpec,
    OptionDistribution,
    PublicGoodsSpec,
    TravelerSpec,
    attrition_distribution,
    attrition_pij,
    attrition_table2,
    diner_conjecture_test,
    diner_ladder,
    diner_p,
    diner_table2,
    diner_table3,
    public_goods_distribution,
    public_goods_p_star,
    public_goods_table2,
    traveler_distribution,
    traveler_mean,
    traveler_pij,
    traveler_table2,
)
from .balance import (
    BalanceTarget,
    SearchResult,
    TableEntry,
    VerificationReport,
    balance_search,
    load_table_entries,
    verify_table,
)
from .errors import (
    AmbiguousRootError,
    CooprobError,
    DegenerateWeightsError,
    DomainError,
    InternalError,
    InvalidTableError,
    NoValidRootError,
    UndefinedPairError,
    UnsupportedClassError,
)
from .estimators import (
    BestResponseThreshold,
    EquiprobabilityReport,
    Leaning,
    MaximinResult,
    PhiChi,
    Response,
    balanced_p,
    best_response,
    best_response_threshold,
    equiprobability,
    expected_payoff2,
    maximin_alt_p,
    maximin_p,
    payoff_max_p,
    phi_chi,
)
from .iteration import IterationTrace, iterate2, iterate2_limits, iterate3, iterate3_limits, iterate_asym
from .nplayer import (
    CubicCoefficients,
    balanced_p3,
    balanced_p_asym,
    balanced_pn,
    cubic_coefficients,
    equiprobability3,
    expected_payoff3,
    psi_omega_coeffs,
)
from .tables import (
    DEFAULT_POLICY,
    AsymmetricTable2,
    Estimate,
    GameClass,
    GameTag,
    NumericPolicy,
    PayoffTable2,
    PayoffTable3,
    classify2,
    classify3,
    payoff_scale,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousRootError",
    "AsymmetricTable2",
    "AttritionSpec",
    "BalanceTarget",
    "BestResponseThreshold",
    "ConjectureReport",
    "CooprobError",
    "CubicCoefficients",
    "DEFAULT_POLICY",
    "DegenerateWeightsError",
    "DinerSpec",
    "DomainError",
    "EquiprobabilityReport",
    "Estimate",
    "GameClass",
    "GameTag",
    "InternalError",
    "InvalidTableError",
    "IterationTrace",
    "Leaning",
    "MaximinResult",
    "NoValidRootError",
    "NumericPolicy",
    "OptionDistribution",
    "PayoffTable2",
    "PayoffTable3",
    "PhiChi",
    "PublicGoodsSpec",
    "Response",
    "SearchResult",
    "TableEntry",
    "TravelerSpec",
    "UndefinedPairError",
    "UnsupportedClassError",
    "VerificationReport",
    "attrition_distribution",
    "attrition_pij",
    "attrition_table2",
    "balance_search",
    "balanced_p",
    "balanced_p3",
    "balanced_p_asym",
    "balanced_pn",
    "best_response",
    "best_response_threshold",
    "classify2",
    "classify3",
    "cubic_coefficients",
    "diner_conjecture_test",
    "diner_ladder",
    "diner_p",
    "diner_table2",
    "diner_table3",
    "equiprobability",
    "equiprobability3",
    "expected_payoff2",
    "expected_payoff3",
    "iterate2",
    "iterate2_limits",
    "iterate3",
    "iterate3_limits",
    "iterate_asym",
    "load_table_entries",
    "maximin_alt_p",
    "maximin_p",
    "payoff_max_p",
    "payoff_scale",
    "phi_chi",
    "psi_omega_coeffs",
    "public_goods_distribution",
    "public_goods_p_star",
    "public_goods_table2",
    "traveler_distribution",
    "traveler_mean",
    "traveler_pij",
    "traveler_table2",
    "verify_table",
]
