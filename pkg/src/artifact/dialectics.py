"""Argumentation lines, dialectical trees, marking and line classification.

Trees are stored as tries over argument ids: a node is the path of ids
from the root, so the same argument reached along two different lines is
two different nodes.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from artifact.argumentation import (
    ArgumentStructure,
    ComparisonCriterion,
    DefeatKind,
    reasoner,
)
from artifact.errors import DelpError
from artifact.kb import Literal, Program


class NotInLine(DelpError):
    pass


class Mark(str, enum.Enum):
    U = "U"
    D = "D"


class LineClass(enum.Enum):
    WARRANTING = "warranting"
    ATTACKING = "attacking"
    DREP = "d-rep"


_PATTERNS = {
    LineClass.WARRANTING: re.compile(r"U(D+U)*"),
    LineClass.ATTACKING: re.compile(r"(DU)+"),
    LineClass.DREP: re.compile(r"(DU)*(D+(DU)+)+"),
}


@dataclass(frozen=True)
class ArgumentationLine:
    nodes: tuple[ArgumentStructure, ...]
    kinds: tuple[DefeatKind, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        kinds = tuple(self.kinds) or (DefeatKind.PROPER,) * (len(self.nodes) - 1)
        object.__setattr__(self, "kinds", kinds)
        if not self.nodes:
            raise ValueError("a line has at least its root")
        if len(self.kinds) != len(self.nodes) - 1:
            raise ValueError("one defeat kind per consecutive pair")

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(self.nodes)

    def __getitem__(self, i):
        return self.nodes[i]

    @property
    def root(self):
        return self.nodes[0]

    @property
    def signature(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.nodes)

    def index(self, arg: ArgumentStructure) -> int:
        for i, a in enumerate(self.nodes):
            if a == arg:
                return i
        raise NotInLine(f"{arg} is not in the line")

    def prefix(self, n: int) -> ArgumentationLine:
        return ArgumentationLine(self.nodes[:n], self.kinds[: max(n - 1, 0)])

    def pro(self) -> tuple[ArgumentStructure, ...]:
        return self.nodes[0::2]

    def con(self) -> tuple[ArgumentStructure, ...]:
        return self.nodes[1::2]

    def __str__(self):
        return "[" + ", ".join(a.id for a in self.nodes) + "]"


def upper_segment(line: ArgumentationLine, arg: ArgumentStructure, proper: bool = False):
    """Prefix of line ending at arg (or just above it when proper); None for
    the proper segment above the root."""
    i = line.index(arg)
    if proper:
        return line.prefix(i) if i > 0 else None
    return line.prefix(i + 1)


def is_acceptable(line: ArgumentationLine, program: Program) -> bool:
    if len(set(line.nodes)) != len(line.nodes):
        return False
    for a, b in zip(line.kinds, line.kinds[1:]):
        if a is DefeatKind.BLOCKING and b is DefeatKind.BLOCKING:
            return False
    r = reasoner(program)
    for side in (line.pro(), line.con()):
        rules = frozenset().union(*(a.rules for a in side))
        if not r.consistent(rules):
            return False
    return True


def bundle_set(program: Program, root: ArgumentStructure, crit: ComparisonCriterion | None = None) -> tuple[ArgumentationLine, ...]:
    """All acceptable lines rooted at root that admit no acceptable extension."""
    r = reasoner(program, crit)
    memo = {}

    def consistent(rules):
        if rules not in memo:
            memo[rules] = r.consistent(rules)
        return memo[rules]

    out = []
    stack = [((root,), (), root.rules, frozenset())]
    while stack:
        nodes, kinds, pro_rules, con_rules = stack.pop()
        children = []
        for d, kind in r.defeater_kinds(nodes[-1]):
            if d in nodes:
                continue
            if kind is DefeatKind.BLOCKING and kinds and kinds[-1] is DefeatKind.BLOCKING:
                continue
            if len(nodes) % 2 == 0:
                grown = pro_rules | d.rules
                if not consistent(grown):
                    continue
                children.append((nodes + (d,), kinds + (kind,), grown, con_rules))
            else:
                grown = con_rules | d.rules
                if not consistent(grown):
                    continue
                children.append((nodes + (d,), kinds + (kind,), pro_rules, grown))
        if children:
            stack.extend(reversed(children))
        else:
            out.append(ArgumentationLine(nodes, kinds))
    return tuple(out)


Path = tuple[str, ...]


class DialecticalTree:
    """The tree induced by a sequence of lines sharing a root.

    Lines keep their given order; `paths` lists nodes in depth-first order.
    """

    def __init__(self, root: ArgumentStructure, lines: Sequence[ArgumentationLine]):
        self.root = root
        self.lines = tuple(lines)
        self.args = {root.id: root}
        self.children: dict[Path, list[Path]] = {(root.id,): []}
        self.edge_kind: dict[Path, DefeatKind] = {}
        for line in self.lines:
            if line.root != root:
                raise ValueError("every line starts at the tree root")
            path = (root.id,)
            for arg, kind in zip(line.nodes[1:], line.kinds):
                self.args[arg.id] = arg
                child = path + (arg.id,)
                if child not in self.children:
                    self.children[child] = []
                    self.children[path].append(child)
                    self.edge_kind[child] = kind
                elif kind is DefeatKind.PROPER:
                    self.edge_kind[child] = kind
                path = child

    @property
    def paths(self) -> list[Path]:
        out, stack = [], [(self.root.id,)]
        while stack:
            p = stack.pop()
            out.append(p)
            stack.extend(reversed(self.children[p]))
        return out

    def arg(self, path: Path) -> ArgumentStructure:
        return self.args[path[-1]]

    def node_count(self) -> int:
        return len(self.children)

    def line_sets(self) -> frozenset[tuple[str, ...]]:
        return frozenset(l.signature for l in self.lines)


def build_tree(program: Program, root: ArgumentStructure, crit: ComparisonCriterion | None = None) -> DialecticalTree:
    return DialecticalTree(root, bundle_set(program, root, crit))


class Marking(dict):
    """Map from tree path to mark."""

    def sequence(self, line: ArgumentationLine) -> list[Mark]:
        sig = line.signature
        return [self[sig[: i + 1]] for i in range(len(sig))]

    @property
    def root_mark(self) -> Mark:
        return next(self[p] for p in self if len(p) == 1)


def mark(tree: DialecticalTree) -> Marking:
    out = Marking()
    for path in reversed(tree.paths):
        kids = tree.children[path]
        out[path] = Mark.U if all(out[k] is Mark.D for k in kids) else Mark.D
    return out


def marking_sequence(line: ArgumentationLine, tree: DialecticalTree, marking: Marking | None = None) -> list[Mark]:
    marking = marking if marking is not None else mark(tree)
    return marking.sequence(line)


def sequence_text(marks: Iterable[Mark]) -> str:
    return "".join(m.value for m in marks)


def classify_sequence(marks: Iterable[Mark]) -> LineClass | None:
    text = sequence_text(marks)
    for cls, pat in _PATTERNS.items():
        if pat.fullmatch(text):
            return cls
    return None


def classify(line: ArgumentationLine, tree: DialecticalTree, marking: Marking | None = None) -> LineClass | None:
    return classify_sequence(marking_sequence(line, tree, marking))


def is_attacking_sequence(marks: Iterable[Mark]) -> bool:
    return _PATTERNS[LineClass.ATTACKING].fullmatch(sequence_text(marks)) is not None


def drep_head(marks: Sequence[Mark]) -> int | None:
    """Index of the head of the uppermost run of repeated D marks."""
    for i in range(len(marks) - 1):
        if marks[i] is Mark.D and marks[i + 1] is Mark.D:
            while i > 0 and marks[i - 1] is Mark.D:
                i -= 1
            return i
    return None


def common_prefix(a: Sequence[str], b: Sequence[str]) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def adjacency_index(l1: ArgumentationLine, l2: ArgumentationLine) -> int | None:
    s1, s2 = l1.signature, l2.signature
    k = common_prefix(s1, s2)
    if k == 0 or k == len(s1) or k == len(s2):
        return None
    return k - 1


def adjacency_point(l1: ArgumentationLine, l2: ArgumentationLine) -> ArgumentStructure | None:
    k = adjacency_index(l1, l2)
    return None if k is None else l1.nodes[k]


def argument_warranted(program: Program, arg: ArgumentStructure, crit: ComparisonCriterion | None = None) -> bool:
    return mark(build_tree(program, arg, crit)).root_mark is Mark.U


def is_warranted(program: Program, goal: Literal, crit: ComparisonCriterion | None = None) -> bool:
    return any(argument_warranted(program, a, crit) for a in reasoner(program, crit).arguments_for(goal))


def warranted_literals(program: Program, crit: ComparisonCriterion | None = None) -> frozenset[Literal]:
    out = set()
    for atom in {l.atom for l in program.literals()}:
        for lit in (Literal(atom), Literal(atom, True)):
            if is_warranted(program, lit, crit):
                out.add(lit)
    return frozenset(out)


def attacking_lines(tree: DialecticalTree, marking: Marking | None = None) -> list[int]:
    marking = marking if marking is not None else mark(tree)
    return [i for i, l in enumerate(tree.lines) if is_attacking_sequence(marking.sequence(l))]


def attacking_indices(tree: DialecticalTree, marking: Marking | None = None) -> frozenset[int]:
    """Indices of the attacking set.

    Candidates are the maximal sets of attacking lines with no two members
    adjacent at a U node; the smallest wins, ties broken on sorted line
    signatures.
    """
    marking = marking if marking is not None else mark(tree)
    att = attacking_lines(tree, marking)
    if not att:
        return frozenset()
    clash = nx.Graph()
    clash.add_nodes_from(att)
    for x, i in enumerate(att):
        for j in att[x + 1:]:
            k = adjacency_index(tree.lines[i], tree.lines[j])
            if k is not None and marking[tree.lines[i].signature[: k + 1]] is Mark.U:
                clash.add_edge(i, j)
    candidates = nx.find_cliques(nx.complement(clash))

    def rank(group):
        return len(group), sorted(tree.lines[i].signature for i in group)

    return frozenset(min(candidates, key=rank))


def attacking_set(tree: DialecticalTree, marking: Marking | None = None) -> tuple[ArgumentationLine, ...]:
    return tuple(tree.lines[i] for i in sorted(attacking_indices(tree, marking)))


def to_dot(tree: DialecticalTree, marking: Marking | None = None, highlight: Iterable[int] = ()) -> str:
    """Graphviz rendering; highlighted line indices are drawn in bold red."""
    marking = marking if marking is not None else mark(tree)
    hot_nodes, hot_edges = set(), set()
    for i in highlight:
        sig = tree.lines[i].signature
        for n in range(1, len(sig) + 1):
            hot_nodes.add(sig[:n])
            if n > 1:
                hot_edges.add(sig[:n])
    names = {p: f"n{k}" for k, p in enumerate(tree.paths)}
    out = ["digraph tree {", "  rankdir=TB;", "  node [shape=box, fontname=monospace];"]
    for p in tree.paths:
        arg = tree.arg(p)
        style = ', color=red, penwidth=2' if p in hot_nodes else ""
        fill = "palegreen" if marking[p] is Mark.U else "lightpink"
        out.append(f'  {names[p]} [label="{arg.id}\\n{arg.claim}\\n{marking[p].value}", style=filled, fillcolor={fill}{style}];')
    for p in tree.paths:
        for c in tree.children[p]:
            style = "solid" if tree.edge_kind[c] is DefeatKind.PROPER else "dashed"
            extra = ", color=red, penwidth=2" if c in hot_edges else ""
            out.append(f"  {names[c]} -> {names[p]} [style={style}{extra}];")
    out.append("}")
    return "\n".join(out) + "\n"
