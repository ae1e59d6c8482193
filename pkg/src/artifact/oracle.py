"""Brute-force reference implementations and a random instance generator.

Nothing here reuses the engine's derivation, argument or tree code; the
only shared pieces are the data types and the preference table.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable

from artifact.argumentation import ArgumentStructure, ComparisonCriterion, DefeatKind
from artifact.errors import BudgetExceeded, PiInconsistent
from artifact.kb import Literal, Program, Rule, RuleKind

MAX_POOL = 16


def naive_closure(rules: Iterable[Rule], seed: Iterable[Literal] = ()) -> set[Literal]:
    known = set(seed)
    rules = list(rules)
    changed = True
    while changed:
        changed = False
        for r in rules:
            if r.head not in known and all(b in known for b in r.body):
                known.add(r.head)
                changed = True
    return known


def clashes(lits: set[Literal]) -> bool:
    return any(l.complement() in lits for l in lits)


class Oracle:
    """Exhaustive semantics for one program; exponential in |Δ|."""

    def __init__(self, program: Program, crit: ComparisonCriterion | None = None):
        self.pi = list(program.pi)
        self.delta = sorted(program.delta)
        self.crit = crit or ComparisonCriterion()
        self._args = None
        self._lines = {}

    def consistent(self, rules) -> bool:
        return not clashes(naive_closure(self.pi + list(rules)))

    def arguments(self) -> list[ArgumentStructure]:
        if self._args is None:
            found = {}
            for size in range(len(self.delta) + 1):
                for combo in itertools.combinations(self.delta, size):
                    closed = naive_closure(self.pi + list(combo))
                    if clashes(closed):
                        continue
                    for lit in closed:
                        if any(set(prev) < set(combo) for prev in found.get(lit, ())):
                            continue
                        if any(lit in naive_closure(self.pi + [r for r in combo if r is not x]) for x in combo):
                            continue
                        found.setdefault(lit, []).append(combo)
            self._args = sorted(ArgumentStructure(frozenset(c), lit) for lit, cs in found.items() for c in cs)
        return self._args

    def disagree(self, a: Literal, b: Literal) -> bool:
        strict = [r for r in self.pi]
        return clashes(naive_closure(strict, {a, b}))

    def defeat_kind(self, d: ArgumentStructure, t: ArgumentStructure) -> DefeatKind | None:
        if not d.rules or not t.rules:
            return None
        best = None
        for sub in self.arguments():
            if not sub.rules or not sub.rules <= t.rules:
                continue
            if not self.disagree(d.claim, sub.claim):
                continue
            kind = self.crit.compare(d, sub)
            if kind is DefeatKind.PROPER:
                return kind
            best = best or kind
        return best

    def lines(self, root: ArgumentStructure) -> list[tuple[tuple[ArgumentStructure, ...], tuple[DefeatKind, ...]]]:
        if root in self._lines:
            return self._lines[root]
        args = self.arguments()
        out = []

        def grow(nodes, kinds):
            ext = False
            for d in args:
                if d in nodes:
                    continue
                kind = self.defeat_kind(d, nodes[-1])
                if kind is None:
                    continue
                if kind is DefeatKind.BLOCKING and kinds and kinds[-1] is DefeatKind.BLOCKING:
                    continue
                side = [a for a in nodes[len(nodes) % 2::2]] + [d]
                if not self.consistent(frozenset().union(*(a.rules for a in side))):
                    continue
                ext = True
                grow(nodes + (d,), kinds + (kind,))
            if not ext:
                out.append((nodes, kinds))

        grow((root,), ())
        self._lines[root] = out
        return out

    def root_undefeated(self, root: ArgumentStructure) -> bool:
        paths = [tuple(a.id for a in nodes) for nodes, _ in self.lines(root)]

        def undefeated(prefix):
            kids = {p[: len(prefix) + 1] for p in paths if len(p) > len(prefix) and p[: len(prefix)] == prefix}
            return all(not undefeated(k) for k in kids)

        return undefeated((root.id,))

    def warranted(self, goal: Literal) -> bool:
        return any(a.claim == goal and self.root_undefeated(a) for a in self.arguments())


def brute_warrant(program: Program, goal: Literal, crit: ComparisonCriterion | None = None) -> bool:
    return Oracle(program, crit).warranted(goal)


def brute_argument_warranted(program: Program, arg: ArgumentStructure, crit=None) -> bool:
    o = Oracle(program, crit)
    return arg in o.arguments() and o.root_undefeated(arg)


def brute_min_removals(program: Program, arg: ArgumentStructure, crit: ComparisonCriterion | None = None,
                       max_pool: int = MAX_POOL) -> list[frozenset[Rule]]:
    """Every inclusion-minimal set of con-side rules whose removal warrants arg
    in (Π, Δ ∪ arg); the search never touches arg's own rules."""
    full = Program(program.pi, program.delta | arg.rules)
    o = Oracle(full, crit)
    pool = set()
    for nodes, _ in o.lines(arg):
        for a in nodes[1::2]:
            pool |= a.rules
    pool = sorted(pool - arg.rules)
    if len(pool) > max_pool:
        raise BudgetExceeded(f"{len(pool)} candidate rules exceed the brute-force budget")
    found = []
    for size in range(len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            cut = frozenset(combo)
            if any(f <= cut for f in found):
                continue
            if brute_argument_warranted(Program(full.pi, full.delta - cut), arg, crit):
                found.append(cut)
    return found


def brute_tree_removals(tree_lines, is_warranting, pool: Iterable[Rule]) -> list[frozenset[Rule]]:
    """Same search over an abstract tree: `is_warranting(cut)` decides."""
    pool = sorted(pool)
    found = []
    for size in range(len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            cut = frozenset(combo)
            if any(f <= cut for f in found):
                continue
            if is_warranting(cut):
                found.append(cut)
    return found


@dataclass(frozen=True)
class SizeParams:
    atoms: int = 5
    facts: int = 2
    strict: int = 1
    delta: int = 8
    max_body: int = 2
    density: float = 0.5
    rule_count: bool = False


@dataclass(frozen=True)
class GeneratedInstance:
    program: Program
    seed: int
    external: ArgumentStructure | None
    prefs: ComparisonCriterion


def _literal(rng, atoms):
    return Literal(rng.choice(atoms), rng.random() < 0.4)


def _rule(rng, atoms, kind, max_body):
    head = _literal(rng, atoms)
    size = rng.randint(1 if kind is RuleKind.STRICT else 0, max_body)
    body = tuple(_literal(rng, atoms) for _ in range(size))
    body = tuple(b for b in body if b.atom != head.atom)
    if kind is RuleKind.STRICT and not body:
        return None
    return Rule(head, body, kind)


def _pick_external(rng, program, atoms, attempts=30):
    pi_lits = sorted(naive_closure(program.pi))
    for _ in range(attempts):
        head = _literal(rng, atoms)
        support = [l for l in pi_lits if l.atom != head.atom]
        body = (rng.choice(support),) if support and rng.random() < 0.8 else ()
        rule = Rule(head, body)
        if rule in program.delta or head in pi_lits:
            continue
        closed = naive_closure(list(program.pi) + [rule])
        if clashes(closed) or head not in closed:
            continue
        # prefer claims the program already argues against
        contested = any(r.head == head.complement() for r in program.delta)
        if contested or rng.random() < 0.2:
            return ArgumentStructure(frozenset([rule]), head)
    return None


def generate(seed: int, size: SizeParams | None = None) -> GeneratedInstance:
    """A random program plus an external argument and preferences.

    The same seed always gives the same instance.
    """
    size = size or SizeParams()
    rng = random.Random(seed)
    atoms = [f"a{i}" for i in range(size.atoms)]
    while True:
        facts = {Rule(Literal(rng.choice(atoms), rng.random() < 0.3), (), RuleKind.FACT) for _ in range(size.facts)}
        strict = {r for r in (_rule(rng, atoms, RuleKind.STRICT, size.max_body) for _ in range(size.strict)) if r}
        delta = {r for r in (_rule(rng, atoms, RuleKind.DEFEASIBLE, size.max_body) for _ in range(size.delta))}
        try:
            program = Program(frozenset(facts | strict), frozenset(delta))
        except PiInconsistent:
            continue
        break
    external = _pick_external(rng, program, atoms)
    if size.rule_count:
        prefs = ComparisonCriterion.rule_count()
    else:
        universe = Program(program.pi, program.delta | (external.rules if external else frozenset()))
        args = Oracle(universe).arguments()
        rank = {a.id: rng.random() for a in args}
        table = set()
        for x, y in itertools.permutations(args, 2):
            if rng.random() < size.density and rank[x.id] > rank[y.id]:
                table.add((x.id, y.id))
        prefs = ComparisonCriterion(table=frozenset(table))
    return GeneratedInstance(program, seed, external, prefs)


def read_corpus(text: str) -> list[tuple[int, int, float]]:
    """Parse `seed,size,density` lines; `#` starts a comment."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            seed, delta, density = line.split(",")
            out.append((int(seed), int(delta), float(density)))
    return out
