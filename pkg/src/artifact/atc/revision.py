"""Expansion, defeating contraction and warranting revision."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

from artifact.argumentation import ArgumentStructure, ComparisonCriterion, is_external, reasoner
from artifact.atc.collaterality import SEARCH_LIMIT, AlterationSets, Collaterality, compute_sets
from artifact.atc.selection import (
    CollateralPolicy,
    IncisionPlan,
    Loop,
    RuleCriterion,
    SelectionCriterion,
    Trace,
    TreeContext,
    _fmt_rules,
    get_incisions,
)
from artifact.dialectics import argument_warranted, build_tree
from artifact.errors import NotAnArgument
from artifact.kb import Program, Rule


@dataclass(frozen=True)
class Settings:
    criterion: SelectionCriterion = SelectionCriterion.INITIAL
    policy: CollateralPolicy = CollateralPolicy.STRICT
    loop: Loop = Loop.PRESERVATION
    minimal: bool = True
    rule_criterion: RuleCriterion = field(default_factory=RuleCriterion)
    limit: int = SEARCH_LIMIT


PRESETS = {
    "initial": (SelectionCriterion.INITIAL, CollateralPolicy.PLAIN),
    "rules": (SelectionCriterion.RULES, CollateralPolicy.PROFIT),
    "tree": (SelectionCriterion.INITIAL, CollateralPolicy.STRICT),
    "tree-rules": (SelectionCriterion.TREE_RULES, CollateralPolicy.STRICT),
    "semantics": (SelectionCriterion.SEMANTICS, CollateralPolicy.STRICT),
}
ALIASES = {
    "rules-preserving": "rules",
    "tree-preserving": "tree",
    "tree-and-rules": "tree-rules",
    "tree-and-rules-preserving": "tree-rules",
    "semantics-preserving": "semantics",
}


def preset(name: str, **overrides) -> Settings:
    """Settings for a named minimal-change criterion."""
    key = ALIASES.get(name, name)
    if key not in PRESETS:
        raise KeyError(f"unknown criterion {name!r}")
    criterion, policy = PRESETS[key]
    return Settings(criterion, policy, **overrides)


@dataclass
class Revision:
    """Everything a contraction computed, kept for reports and checks."""

    before: Program
    program: Program
    arg: ArgumentStructure
    removed: frozenset[Rule]
    ctx: TreeContext | None
    plan: IncisionPlan | None
    sets: AlterationSets | None
    collaterality: Collaterality | None
    trace: Trace
    notices: list[str]


def expand(program: Program, arg: ArgumentStructure) -> Program:
    return Program(program.pi, program.delta | arg.rules)


def _contraction(program: Program, arg: ArgumentStructure, settings: Settings,
                 crit: ComparisonCriterion | None) -> Revision:
    if not reasoner(program, crit).is_argument(arg):
        raise NotAnArgument(f"{arg} is not an argument of the program")
    trace = Trace()
    tree = build_tree(program, arg, crit)
    ctx = TreeContext(tree, program=program, crit=crit)
    if not ctx.attacking:
        trace.add("result({})")
        return Revision(program, program, arg, frozenset(), ctx, None, None, None, trace, [])
    plan = get_incisions(ctx, settings.criterion, settings.rule_criterion, settings.minimal,
                         settings.policy, settings.loop, trace)
    sets, col = compute_sets(ctx, plan, settings.rule_criterion, settings.limit, trace)
    removed = sets.psi
    trace.add(f"result({_fmt_rules(removed)})")
    after = program.with_delta(program.delta - removed)
    return Revision(program, after, arg, removed, ctx, plan, sets, col, trace,
                    list(plan.notices) + list(sets.notices))


def contraction(program, arg, settings: Settings | None = None, crit=None) -> Revision:
    return _contraction(program, arg, settings or Settings(), crit)


def contract(program, arg, settings: Settings | None = None, crit=None) -> Program:
    return contraction(program, arg, settings, crit).program


def revision(program: Program, arg: ArgumentStructure, settings: Settings | None = None,
             crit: ComparisonCriterion | None = None) -> Revision:
    """Add the argument's rules, then contract until it is warranted."""
    is_external(program, arg)
    out = _contraction(expand(program, arg), arg, settings or Settings(), crit)
    out.before = program
    return out


def revise(program, arg, settings: Settings | None = None, crit=None) -> Program:
    return revision(program, arg, settings, crit).program


def warranted_in(delta: frozenset[Rule], pi: frozenset[Rule], arg: ArgumentStructure,
                 crit: ComparisonCriterion | None) -> bool:
    prog = Program(pi, delta)
    return reasoner(prog, crit).is_argument(arg) and argument_warranted(prog, arg, crit)


@dataclass
class PostulateReport:
    inclusion: bool
    success: bool
    core_retainment: bool | None
    witnesses: dict[Rule, frozenset[Rule] | None] = field(default_factory=dict)

    @property
    def ok(self):
        return self.inclusion and self.success and self.core_retainment is not False


def retainment_witness(before: Program, after: Program, arg: ArgumentStructure, removed_rule: Rule,
                       crit=None, brute_limit: int = 8):
    """Some subset of the original defeasible rules that warrants arg once
    arg is added, and stops doing so when removed_rule joins it.

    None means no witness exists; raises LookupError if the search was skipped."""

    def works(sub):
        base = sub | arg.rules
        return warranted_in(base, before.pi, arg, crit) and not warranted_in(base | {removed_rule}, before.pi, arg, crit)

    first = after.delta & before.delta
    if works(first):
        return first
    pool = sorted(before.delta - {removed_rule})
    if len(pool) > brute_limit:
        raise LookupError("too many rules for exhaustive witness search")
    for size in range(len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            if works(frozenset(combo)):
                return frozenset(combo)
    return None


def check_postulates(before: Program, after: Program, arg: ArgumentStructure,
                     crit: ComparisonCriterion | None = None, brute_limit: int = 8) -> PostulateReport:
    inclusion = after.pi == before.pi and after.delta <= before.delta | arg.rules
    success = warranted_in(after.delta, after.pi, arg, crit)
    witnesses = {}
    core = True
    for rule in sorted(before.delta - after.delta):
        try:
            w = retainment_witness(before, after, arg, rule, crit, brute_limit)
        except LookupError:
            witnesses[rule] = None
            core = None if core else core
            continue
        witnesses[rule] = w
        if w is None:
            core = False
    return PostulateReport(inclusion, success, core, witnesses)


def with_loop(settings: Settings, loop: Loop) -> Settings:
    return replace(settings, loop=loop)
