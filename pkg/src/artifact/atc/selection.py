"""Selections, incisions and the principles constraining collateral cuts."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable

from artifact.argumentation import ArgumentStructure, ComparisonCriterion
from artifact.dialectics import (
    DialecticalTree,
    Marking,
    adjacency_index,
    argument_warranted,
    attacking_indices,
    mark,
)
from artifact.errors import StrictUnsatisfiable
from artifact.kb import Program, Rule


class SelectionCriterion(enum.Enum):
    INITIAL = "initial"
    RULES = "rules-preserving"
    TREE_RULES = "tree-and-rules-preserving"
    SEMANTICS = "semantics-preserving"


class CollateralPolicy(enum.Enum):
    """How an incision picks among equally valid cuts of its argument."""

    PLAIN = "plain"
    PROFIT = "profit"  # prefer cuts landing on other attacking lines' selections
    STRICT = "strict"  # prefer cuts touching nothing but the selection


class Principle(enum.Enum):
    CAUTIOUSNESS = "cautiousness"
    PRESERVATION = "preservation"
    ROOT = "root-preservation"
    STRICT = "strict-preservation"
    PROFITABILITY = "profitability"
    WEAK_PROFITABILITY = "weak-profitability"


class Loop(enum.Enum):
    PRESERVATION = "preservation"
    STRICT = "strict"
    PROFITABILITY = "profitability"


@dataclass(frozen=True)
class RuleCriterion:
    """Total order on rule sets: smaller sets first, then by the rank of
    their members. Rules listed in `rank` come first in that order; the
    rest follow sorted by their text."""

    rank: tuple[Rule, ...] = ()

    def _rule_key(self, r):
        pos = {x: i for i, x in enumerate(self.rank)}.get(r)
        return (0, pos, "") if pos is not None else (1, 0, r.key)

    def key(self, rules: Iterable[Rule]):
        rules = list(rules)
        return len(rules), sorted(self._rule_key(r) for r in rules)

    def least(self, candidates: Iterable[frozenset[Rule]]) -> frozenset[Rule]:
        return min(candidates, key=self.key)


class TreeContext:
    """A marked tree plus per-line lookups shared by the revision steps."""

    def __init__(self, tree: DialecticalTree, marking: Marking | None = None,
                 program: Program | None = None, crit: ComparisonCriterion | None = None):
        self.tree = tree
        self.marking = marking if marking is not None else mark(tree)
        self.program = program
        self.crit = crit
        self.lines = tree.lines
        self.attacking = attacking_indices(tree, self.marking)
        self.root_rules = tree.root.rules
        self._warranted = {}

    @property
    def n(self):
        return len(self.lines)

    def line_id(self, j: int) -> str:
        return f"l{j + 1}"

    def arg(self, j: int, pos: int) -> ArgumentStructure:
        return self.lines[j].nodes[pos]

    def cons(self, j: int) -> list[int]:
        return list(range(1, len(self.lines[j]), 2))

    def hit(self, rules: frozenset[Rule], j: int) -> int | None:
        """Position of the uppermost argument of line j sharing a rule with `rules`."""
        if not rules:
            return None
        for pos, a in enumerate(self.lines[j].nodes):
            if a.rules & rules:
                return pos
        return None

    def warranted(self, arg: ArgumentStructure) -> bool:
        if arg not in self._warranted:
            self._warranted[arg] = self.program is not None and argument_warranted(self.program, arg, self.crit)
        return self._warranted[arg]

    def all_args(self) -> set[ArgumentStructure]:
        return {a for line in self.lines for a in line.nodes}


@dataclass(frozen=True)
class SelectionOrder:
    """Candidates for one line's selection with a strict order among them.

    Positions index the line; a pair (b, w) means b is the better choice.
    """

    line: int
    criterion: SelectionCriterion
    domain: tuple[int, ...]
    pairs: frozenset[tuple[int, int]] = frozenset()

    def restrict(self, upto: int, cons: Iterable[int]) -> SelectionOrder:
        """Update rule: keep only candidates at or above position `upto`."""
        domain = tuple(p for p in self.domain if p <= upto)
        if not domain:
            domain = tuple(p for p in cons if p <= upto)
        pairs = frozenset((a, b) for a, b in self.pairs if a <= upto and b <= upto)
        if not (set(self.domain) <= set(domain)):
            pairs |= _lower_is_better(domain) - {(b, a) for a, b in pairs}
        return SelectionOrder(self.line, self.criterion, domain, pairs)

    def without(self, pos: int) -> SelectionOrder:
        domain = tuple(p for p in self.domain if p != pos)
        pairs = frozenset((a, b) for a, b in self.pairs if pos not in (a, b))
        return SelectionOrder(self.line, self.criterion, domain, pairs)

    def only(self, pos: int) -> SelectionOrder:
        return SelectionOrder(self.line, self.criterion, (pos,), frozenset())


def _lower_is_better(positions):
    return frozenset((a, b) for a in positions for b in positions if a > b)


def _higher_is_better(positions):
    return frozenset((a, b) for a in positions for b in positions if a < b)


def make_order(criterion: SelectionCriterion, j: int, ctx: TreeContext) -> SelectionOrder:
    cons = ctx.cons(j)
    if criterion is SelectionCriterion.RULES:
        return SelectionOrder(j, criterion, tuple(cons), _higher_is_better(cons))
    if criterion is SelectionCriterion.SEMANTICS:
        domain = [p for p in cons if not ctx.warranted(ctx.arg(j, p))] or cons
        return SelectionOrder(j, criterion, tuple(domain), _lower_is_better(domain))
    if criterion is SelectionCriterion.TREE_RULES and j in ctx.attacking:
        points = [adjacency_index(ctx.lines[j], ctx.lines[k]) for k in ctx.attacking if k != j]
        points = [p for p in points if p is not None]
        if points:
            top = min(points)
            domain = [p for p in cons if p <= top]
            if domain:
                return SelectionOrder(j, criterion, tuple(domain), _lower_is_better(domain))
    return SelectionOrder(j, criterion, tuple(cons), _lower_is_better(cons))


def select(order: SelectionOrder) -> int | None:
    """Position of the best candidate, or None for the escape selection."""
    if not order.domain:
        return None
    best = [p for p in order.domain
            if not any((q, p) in order.pairs and (p, q) not in order.pairs for q in order.domain)]
    return min(best or order.domain)


def candidate_cuts(arg: ArgumentStructure, minimal: bool, exclude: frozenset[Rule] = frozenset()):
    pool = sorted(arg.rules - exclude) or sorted(arg.rules)
    if minimal:
        return [frozenset([r]) for r in pool]
    return [frozenset(c) for size in range(1, len(pool) + 1) for c in itertools.combinations(pool, size)]


def incise(selected: ArgumentStructure | None, rule_criterion: RuleCriterion | None = None,
           minimally_warranting: bool = True, exclude: frozenset[Rule] = frozenset(), prefer=None) -> frozenset[Rule]:
    """The least cut of `selected`; `prefer` ranks cuts before the rule criterion does."""
    if selected is None:
        return frozenset()
    rule_criterion = rule_criterion or RuleCriterion()
    cuts = candidate_cuts(selected, minimally_warranting, exclude)
    if prefer is None:
        return rule_criterion.least(cuts)
    return min(cuts, key=lambda c: (prefer(c), rule_criterion.key(c)))


@dataclass(frozen=True)
class Hit:
    """An uppermost collateral incision: `src`'s cut reaches line `dst` at `pos`."""

    src: int
    dst: int
    pos: int
    rules: frozenset[Rule]
    trivial: bool


@dataclass
class IncisionPlan:
    orders: dict[int, SelectionOrder]
    selection: dict[int, int | None]
    incisions: dict[int, frozenset[Rule]]
    notices: list[str] = field(default_factory=list)

    def selected(self, ctx: TreeContext, j: int) -> ArgumentStructure | None:
        pos = self.selection.get(j)
        return None if pos is None else ctx.arg(j, pos)

    def psi(self, lines: Iterable[int]) -> frozenset[Rule]:
        return frozenset().union(*(self.incisions[j] for j in lines))


def hits_of(ctx: TreeContext, src: int, cut: frozenset[Rule], selection: dict[int, int | None]) -> list[Hit]:
    out = []
    sel_src = selection.get(src)
    chosen = None if sel_src is None else ctx.arg(src, sel_src)
    for j in range(ctx.n):
        pos = ctx.hit(cut, j)
        if pos is None:
            continue
        trivial = selection.get(j) == pos and ctx.arg(j, pos) == chosen
        out.append(Hit(src, j, pos, cut & ctx.arg(j, pos).rules, trivial))
    return out


def all_hits(ctx: TreeContext, plan: IncisionPlan) -> list[Hit]:
    out = []
    for j in range(ctx.n):
        out.extend(hits_of(ctx, j, plan.incisions.get(j, frozenset()), plan.selection))
    return out


def uppermost_collateral(incision: frozenset[Rule], line) -> tuple[ArgumentStructure, frozenset[Rule]] | None:
    for a in line.nodes:
        common = a.rules & incision
        if common:
            return a, frozenset(common)
    return None


def _hit_ok(principle, h: Hit, ctx: TreeContext, selection):
    sel = selection.get(h.dst)
    if principle is Principle.ROOT:
        return h.pos != 0
    if principle is Principle.PRESERVATION:
        return h.pos != 0 and sel is not None and sel <= h.pos
    if h.trivial:
        return True
    if principle is Principle.STRICT:
        return False
    if principle is Principle.WEAK_PROFITABILITY:
        return sel == h.pos
    if principle is Principle.PROFITABILITY:
        return sel == h.pos and h.dst in ctx.attacking
    raise ValueError(principle)


def check_principle(principle: Principle, ctx: TreeContext, plan: IncisionPlan):
    """(holds, witness); the witness is the offending Hit or, for
    cautiousness, the line whose selection has no private rule."""
    if principle is Principle.CAUTIOUSNESS:
        args = ctx.all_args()
        for j in range(ctx.n):
            chosen = plan.selected(ctx, j)
            if chosen is None:
                continue
            others = frozenset().union(*(a.rules for a in args if a != chosen))
            if not chosen.rules - others:
                return False, j
        return True, None
    for h in all_hits(ctx, plan):
        if not _hit_ok(principle, h, ctx, plan.selection):
            return False, h
    return True, None


def policy_key(policy: CollateralPolicy, ctx: TreeContext, src: int, selection):
    if policy is CollateralPolicy.PLAIN:
        return None

    def key(cut):
        hs = [h for h in hits_of(ctx, src, cut, selection) if not h.trivial]
        if policy is CollateralPolicy.STRICT:
            return (len(hs),)
        bad = sum(1 for h in hs if not (h.dst in ctx.attacking and selection.get(h.dst) == h.pos))
        return bad, -(len(hs) - bad)

    return key


def compute_incisions(ctx: TreeContext, selection, rule_criterion: RuleCriterion, minimal: bool,
                      policy: CollateralPolicy) -> dict[int, frozenset[Rule]]:
    out = {}
    for j in range(ctx.n):
        pos = selection.get(j)
        chosen = None if pos is None else ctx.arg(j, pos)
        out[j] = incise(chosen, rule_criterion, minimal, ctx.root_rules, policy_key(policy, ctx, j, selection))
    return out


class Trace(list):
    def add(self, record: str):
        self.append(record)


def _fmt_rules(rules):
    return "{" + ", ".join(r.key[:-1] for r in sorted(rules)) + "}"


def _round(ctx, orders, rule_criterion, minimal, policy, trace):
    selection = {j: select(orders[j]) for j in range(ctx.n)}
    incisions = compute_incisions(ctx, selection, rule_criterion, minimal, policy)
    plan = IncisionPlan(dict(orders), selection, incisions)
    if trace is not None:
        for j in range(ctx.n):
            pos = selection[j]
            if pos is None:
                continue
            trace.add(f"select({ctx.line_id(j)}, {ctx.arg(j, pos).id})")
            trace.add(f"incise({ctx.arg(j, pos).id}, {_fmt_rules(incisions[j])})")
    hits = all_hits(ctx, plan)
    if trace is not None:
        for h in hits:
            if not h.trivial and h.src != h.dst:
                trace.add(f"collateral({ctx.line_id(h.dst)}, {ctx.arg(h.dst, h.pos).id})")
    return plan, hits


def _preservation_loop(ctx, orders, rule_criterion, minimal, policy, trace):
    while True:
        plan, hits = _round(ctx, orders, rule_criterion, minimal, policy, trace)
        worst, rooted = {}, set()
        for h in hits:
            if _hit_ok(Principle.PRESERVATION, h, ctx, plan.selection):
                continue
            if h.pos == 0:
                rooted.add(h.src)
            else:
                worst[h.dst] = min(worst.get(h.dst, h.pos), h.pos)
        if not worst and not rooted:
            return plan
        # a cut reaching the root can only be fixed at its source
        for j in sorted(rooted):
            pos = plan.selection[j]
            orders[j] = orders[j].without(pos)
            if not orders[j].domain:
                orders[j] = orders[j].only(1)
            if trace is not None:
                trace.add(f"update_order({ctx.line_id(j)}, {ctx.arg(j, pos).id})")
        for j, pos in sorted(worst.items()):
            if j in rooted:
                continue
            orders[j] = orders[j].restrict(pos, ctx.cons(j))
            if trace is not None:
                trace.add(f"update_order({ctx.line_id(j)}, {ctx.arg(j, pos).id})")


def _strict_loop(ctx, orders, rule_criterion, minimal, policy, trace):
    while True:
        plan, hits = _round(ctx, orders, rule_criterion, minimal, policy, trace)
        bad = sorted({h.src for h in hits if not _hit_ok(Principle.STRICT, h, ctx, plan.selection)})
        if not bad:
            return plan
        for j in bad:
            orders[j] = orders[j].without(plan.selection[j])
            if not orders[j].domain:
                raise StrictUnsatisfiable(f"no selection in {ctx.line_id(j)} avoids collateral incisions")
            if trace is not None:
                trace.add(f"update_order({ctx.line_id(j)}, {ctx.arg(j, plan.selection[j]).id})")


def _profit_loop(ctx, orders, rule_criterion, minimal, policy, trace):
    seen = set()
    while True:
        plan, hits = _round(ctx, orders, rule_criterion, minimal, policy, trace)
        bad = [h for h in hits if not _hit_ok(Principle.PROFITABILITY, h, ctx, plan.selection)]
        if not bad:
            return plan
        state = tuple(sorted(plan.selection.items()))
        targets = {}
        for h in bad:
            targets.setdefault(h.dst, set()).add(h.pos)
        fixable = all(h.dst in ctx.attacking and h.pos % 2 == 1 for h in bad)
        if not fixable or state in seen or any(len(v) > 1 for v in targets.values()):
            return None
        seen.add(state)
        for j, (pos,) in targets.items():
            orders[j] = orders[j].only(pos)
            if trace is not None:
                trace.add(f"update_order({ctx.line_id(j)}, {ctx.arg(j, pos).id})")


def get_incisions(ctx: TreeContext, criterion: SelectionCriterion = SelectionCriterion.INITIAL,
                  rule_criterion: RuleCriterion | None = None, minimal: bool = True,
                  policy: CollateralPolicy = CollateralPolicy.PLAIN, loop: Loop = Loop.PRESERVATION,
                  trace: Trace | None = None, orders: dict[int, SelectionOrder] | None = None) -> IncisionPlan:
    """Select and incise every line until the chosen principle holds."""
    rule_criterion = rule_criterion or RuleCriterion()
    orders = dict(orders) if orders else {j: make_order(criterion, j, ctx) for j in range(ctx.n)}
    if loop is Loop.STRICT:
        plan = _strict_loop(ctx, orders, rule_criterion, minimal, policy, trace)
        return _preservation_loop(ctx, dict(plan.orders), rule_criterion, minimal, policy, trace)
    if loop is Loop.PROFITABILITY:
        plan = _profit_loop(ctx, dict(orders), rule_criterion, minimal, policy, trace)
        if plan is not None:
            return plan
        if trace is not None:
            trace.add("notice(profitability unsatisfiable, falling back to preservation)")
        plan = _preservation_loop(ctx, orders, rule_criterion, minimal, policy, trace)
        plan.notices.append("profitability unsatisfiable; fell back to preservation")
        return plan
    return _preservation_loop(ctx, orders, rule_criterion, minimal, policy, trace)
