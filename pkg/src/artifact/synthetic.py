"""Abstract trees built directly from lines, for exercising the revision
machinery on shapes that small programs rarely produce."""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from artifact.argumentation import ArgumentStructure
from artifact.atc import RuleCriterion, TreeContext
from artifact.dialectics import ArgumentationLine, DialecticalTree
from artifact.kb import Literal, Rule


def shared(i: int) -> Rule:
    """The i-th shared rule, a presumption named phi<i>."""
    return Rule(Literal(f"phi{i}"), ())


def private(name: str) -> Rule:
    return Rule(Literal(f"own_{name.lower()}"), ())


def node(name: str, *rule_ids: int, own: bool = True) -> ArgumentStructure:
    """An abstract argument: the listed shared rules plus a private one."""
    rules = {shared(i) for i in rule_ids}
    if own or not rules:
        rules.add(private(name))
    return ArgumentStructure(frozenset(rules), Literal(name.lower()))


def line(*nodes: ArgumentStructure) -> ArgumentationLine:
    return ArgumentationLine(tuple(nodes))


def context(lines: Sequence[ArgumentationLine]) -> TreeContext:
    return TreeContext(DialecticalTree(lines[0].root, lines))


def rank(*ids: int) -> RuleCriterion:
    """Rule criterion listing shared rules from most to least preferred;
    private rules come after all of them."""
    return RuleCriterion(tuple(shared(i) for i in ids))


def random_tree(seed: int, depth: int = 5, branching: int = 3, pool: int = 6,
                reuse: float = 0.25) -> tuple[TreeContext, RuleCriterion]:
    """A random tree whose arguments share rules from a small pool.

    Some arguments reappear on other branches (never twice on one line),
    which is what makes collateral cuts interesting.
    """
    rng = random.Random(seed)
    made = []

    def fresh():
        name = f"n{len(made)}"
        ids = rng.sample(range(1, pool + 1), rng.randint(0, 2))
        arg = node(name, *ids, own=rng.random() < 0.7)
        made.append(arg)
        return arg

    root = ArgumentStructure(frozenset([private("root")]), Literal("root"))
    lines = []

    def grow(path):
        limit = depth if len(path) < 2 else rng.randint(len(path), depth)
        kids = 0 if len(path) >= limit else rng.randint(1 if len(path) == 1 else 0, branching)
        chosen = []
        for _ in range(kids):
            pick = None
            if made and rng.random() < reuse:
                pick = rng.choice(made)
                if pick in path or pick in chosen:
                    pick = None
            chosen.append(pick or fresh())
        if not chosen:
            lines.append(ArgumentationLine(tuple(path)))
            return
        for c in chosen:
            grow(path + [c])

    grow([root])
    order = list(range(1, pool + 1))
    rng.shuffle(order)
    return context(lines), rank(*order)


def names(ctx: TreeContext, lines: Iterable[int]) -> list[str]:
    return [ctx.line_id(j) for j in sorted(lines)]
