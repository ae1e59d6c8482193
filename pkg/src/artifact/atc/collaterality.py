"""Hypothetical trees, collaterality and the alteration sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from artifact.atc.selection import IncisionPlan, Principle, RuleCriterion, TreeContext, check_principle
from artifact.dialectics import ArgumentationLine, DialecticalTree, Mark, is_attacking_sequence, mark
from artifact.errors import SearchBudgetExceeded
from artifact.kb import Rule

SEARCH_LIMIT = 20


def cut_lines(ctx: TreeContext, psi: frozenset[Rule]) -> list[ArgumentationLine | None]:
    """Each line as it survives removing psi: whole, cut just above its
    uppermost hit, or None once the root itself is hit."""
    out = []
    for j, line in enumerate(ctx.lines):
        pos = ctx.hit(psi, j)
        if pos is None:
            out.append(line)
        elif pos == 0:
            out.append(None)
        else:
            out.append(line.prefix(pos))
    return out


class Hypothetical:
    """The tree left after removing psi, with its marking."""

    def __init__(self, ctx: TreeContext, psi: frozenset[Rule]):
        self.psi = frozenset(psi)
        self.survivors = cut_lines(ctx, self.psi)
        self.tree = DialecticalTree(ctx.tree.root, [l for l in self.survivors if l is not None])
        self.marking = mark(self.tree)

    @property
    def warranting(self) -> bool:
        return self.marking.root_mark is Mark.U

    def attacking(self, j: int) -> bool:
        line = self.survivors[j]
        return line is not None and is_attacking_sequence(self.marking.sequence(line))


def hypothetical_tree(ctx: TreeContext, psi: Iterable[Rule]) -> DialecticalTree:
    return Hypothetical(ctx, frozenset(psi)).tree


class Collaterality:
    """Open and closed collaterality over one incision plan, with caches."""

    def __init__(self, ctx: TreeContext, plan: IncisionPlan):
        self.ctx = ctx
        self.plan = plan
        self._hyp = {}
        self._open = {}

    def hypothetical(self, psi: frozenset[Rule]) -> Hypothetical:
        if psi not in self._hyp:
            self._hyp[psi] = Hypothetical(self.ctx, psi)
        return self._hyp[psi]

    def _valid(self, j) -> bool:
        return isinstance(j, int) and 0 <= j < self.ctx.n

    def opened(self, j: int) -> frozenset[int]:
        if not self._valid(j):
            return frozenset()
        if j not in self._open:
            psi = self.plan.incisions[j]
            hyp = self.hypothetical(psi)
            out = set()
            for k in range(self.ctx.n):
                pos = self.ctx.hit(psi, k)
                if pos and hyp.attacking(k):
                    out.add(k)
            self._open[j] = frozenset(out)
        return self._open[j]

    def closed(self, j: int) -> frozenset[int]:
        if not self._valid(j):
            return frozenset()
        psi = self.plan.incisions[j]
        return frozenset(k for k in range(self.ctx.n)
                         if (chosen := self.plan.selected(self.ctx, k)) is not None and chosen.rules & psi)

    def pair(self, j: int) -> tuple[frozenset[int], frozenset[int]]:
        return self.opened(j), self.closed(j)

    def context_open(self, group: Iterable[int]) -> frozenset[int]:
        group = list(group)
        if not all(self._valid(j) for j in group):
            return frozenset()
        return self.ctx.attacking | frozenset().union(*(self.opened(j) for j in group))

    def context_closed(self, group: Iterable[int]) -> frozenset[int]:
        group = list(group)
        if not all(self._valid(j) for j in group):
            return frozenset()
        psi = self.plan.psi(group)
        return frozenset(k for k in range(self.ctx.n) if (pos := self.ctx.hit(psi, k)) is not None and pos % 2 == 1)

    def context_pair(self, group: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
        group = list(group)
        return self.context_open(group), self.context_closed(group)


def alteration_set(col: Collaterality, trace=None) -> tuple[frozenset[int], int]:
    """Least fixpoint grown from the attacking set; returns (lines, steps)."""
    level = frozenset(col.ctx.attacking)
    step = 0
    while True:
        if trace is not None:
            trace.add(f"fixpoint({step}, {{{', '.join(col.ctx.line_id(j) for j in sorted(level))}}})")
        grown = level.union(*(col.opened(j) for j in level))
        if grown == level:
            return level, step
        level, step = grown, step + 1


def self_closing(col: Collaterality, lines: frozenset[int]) -> bool:
    """Whether some member is closed by the rest of the set."""
    return any(j in col.context_closed(lines - {j}) for j in lines)


def equal_incisions_hold(col: Collaterality, lines: frozenset[int]) -> bool:
    inc = col.plan.incisions
    for j in lines:
        for k in col.closed(j) & lines:
            if inc[k] != inc[j]:
                return False
    for k in lines:
        if k in col.context_closed(lines - {k}) and not any(j != k and k in col.closed(j) for j in lines):
            return False
    return True


def is_aware_candidate(col: Collaterality, group: frozenset[int]) -> bool:
    return col.context_open(group) <= col.context_closed(group)


@dataclass(frozen=True)
class AlterationSets:
    attacking: frozenset[int]
    alteration: frozenset[int]
    incision_aware: frozenset[int]
    psi: frozenset[Rule]
    steps: int
    via: str
    notices: tuple[str, ...] = ()
    widened: frozenset[int] = frozenset()
    restored: frozenset[Rule] = frozenset()


def incision_aware_alteration_set(col: Collaterality, alteration: frozenset[int],
                                  rule_criterion: RuleCriterion | None = None,
                                  limit: int = SEARCH_LIMIT) -> tuple[frozenset[int], str]:
    """Smallest self-sufficient subset of the alteration set by total incision.

    Returns the subset and how it was obtained.
    """
    rule_criterion = rule_criterion or RuleCriterion()
    if not alteration:
        return frozenset(), "empty"
    if not self_closing(col, alteration):
        return alteration, "no-self-closure"
    members = sorted(alteration)
    if len(members) > limit:
        raise SearchBudgetExceeded(f"alteration set of {len(members)} lines exceeds the search limit",
                                   fallback=alteration)
    minimal = []
    for size in range(1, len(members) + 1):
        for combo in itertools.combinations(members, size):
            group = frozenset(combo)
            if any(m <= group for m in minimal):
                continue
            if is_aware_candidate(col, group):
                minimal.append(group)
    if not minimal:
        return alteration, "search-exhausted"
    best = min(minimal, key=lambda g: (rule_criterion.key(col.plan.psi(g)), sorted(g)))
    return best, "search"


def settle(col: Collaterality, lines: frozenset[int], rule_criterion: RuleCriterion | None = None):
    """Make the cut warranting and then inclusion-minimal.

    Lines still attacking once the cut is applied join the set; afterwards
    rules whose return keeps the tree warranting are put back, trying the
    ones the rule criterion least likes to cut first.
    Returns (lines, psi, widened lines, restored rules).
    """
    rule_criterion = rule_criterion or RuleCriterion()
    lines = frozenset(lines)
    widened = set()
    psi = col.plan.psi(lines)
    while not col.hypothetical(psi).warranting:
        hyp = col.hypothetical(psi)
        extra = {j for j in range(col.ctx.n) if j not in lines and hyp.attacking(j)}
        if not extra:
            extra = set(range(col.ctx.n)) - lines
            if not extra:
                break
        widened |= extra
        lines |= extra
        psi = col.plan.psi(lines)
    restored = set()
    for rule in sorted(psi, key=lambda r: rule_criterion.key([r]), reverse=True):
        if col.hypothetical(psi - {rule}).warranting:
            psi = psi - {rule}
            restored.add(rule)
    return lines, psi, frozenset(widened), frozenset(restored)


def compute_sets(ctx: TreeContext, plan: IncisionPlan, rule_criterion: RuleCriterion | None = None,
                 limit: int = SEARCH_LIMIT, trace=None, shortcuts: bool = True) -> tuple[AlterationSets, Collaterality]:
    col = Collaterality(ctx, plan)
    notices = []
    if shortcuts and check_principle(Principle.WEAK_PROFITABILITY, ctx, plan)[0]:
        alteration, steps, via = frozenset(ctx.attacking), 0, "weak-profitability"
    else:
        alteration, steps = alteration_set(col, trace)
        via = ""
    try:
        aware, how = incision_aware_alteration_set(col, alteration, rule_criterion, limit)
    except SearchBudgetExceeded:
        if not equal_incisions_hold(col, alteration):
            raise
        aware, how = alteration, "equal-incisions"
        notices.append("search skipped: incision totals coincide")
    via = ",".join(x for x in (via, how) if x)
    lines, psi, widened, restored = settle(col, aware, rule_criterion)
    if widened:
        notices.append("cut widened to lines " + ", ".join(ctx.line_id(j) for j in sorted(widened)))
    if restored:
        notices.append("kept redundant rules " + ", ".join(r.key for r in sorted(restored)))
    sets = AlterationSets(frozenset(ctx.attacking), alteration, aware, psi, steps, via, tuple(notices),
                          widened, restored)
    return sets, col
