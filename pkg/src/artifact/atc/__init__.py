"""Argument change: selecting and cutting con arguments until a root is warranted."""

from artifact.atc.collaterality import (
    SEARCH_LIMIT,
    AlterationSets,
    Collaterality,
    Hypothetical,
    alteration_set,
    compute_sets,
    cut_lines,
    equal_incisions_hold,
    hypothetical_tree,
    incision_aware_alteration_set,
    self_closing,
)
from artifact.atc.revision import (
    ALIASES,
    PRESETS,
    PostulateReport,
    Revision,
    Settings,
    check_postulates,
    contract,
    contraction,
    expand,
    preset,
    retainment_witness,
    revise,
    revision,
    with_loop,
)
from artifact.atc.selection import (
    CollateralPolicy,
    Hit,
    IncisionPlan,
    Loop,
    Principle,
    RuleCriterion,
    SelectionCriterion,
    SelectionOrder,
    Trace,
    TreeContext,
    all_hits,
    check_principle,
    compute_incisions,
    get_incisions,
    incise,
    make_order,
    select,
    uppermost_collateral,
)

__all__ = [name for name in dir() if not name.startswith("_")]
