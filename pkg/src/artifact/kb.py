"""Ground defeasible logic programs: literals, rules, parsing and derivation.

>>> prog = parse_program("t. z. p <- t. ~a -< y.")
>>> sorted(str(r) for r in prog.pi)
['p <- t.', 't.', 'z.']
>>> [str(r) for r in prog.delta]
['~a -< y.']
>>> derives(prog.pi, Literal("p"))
True
"""

from __future__ import annotations

import bisect
import enum
import hashlib
import re
from dataclasses import dataclass, field
from typing import Iterable

from artifact import kernel
from artifact.errors import PiInconsistent, ProgramSyntaxError

IDENT = re.compile(r"[a-z][a-zA-Z0-9_]*")


@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    negated: bool = False

    def __post_init__(self):
        if not self.atom or any(ch.isspace() for ch in self.atom):
            raise ValueError(f"bad atom {self.atom!r}")

    def complement(self) -> Literal:
        return Literal(self.atom, not self.negated)

    @classmethod
    def parse(cls, text: str) -> Literal:
        text = text.strip()
        if text.startswith("~"):
            return cls(text[1:].strip(), True)
        return cls(text)

    def __str__(self):
        return ("~" if self.negated else "") + self.atom


class RuleKind(enum.Enum):
    FACT = "fact"
    STRICT = "strict"
    DEFEASIBLE = "defeasible"


@dataclass(frozen=True)
class Rule:
    """A ground rule. The body is kept sorted and duplicate-free, so two
    rules that differ only in body order compare equal."""

    head: Literal
    body: tuple[Literal, ...] = ()
    kind: RuleKind = RuleKind.DEFEASIBLE
    key: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(sorted(set(self.body))))
        if self.kind is RuleKind.FACT and self.body:
            raise ValueError("a fact has no body")
        object.__setattr__(self, "key", self._render())

    @property
    def is_defeasible(self):
        return self.kind is RuleKind.DEFEASIBLE

    def _render(self):
        body = ", ".join(map(str, self.body))
        if self.kind is RuleKind.FACT:
            return f"{self.head}."
        arrow = "-<" if self.is_defeasible else "<-"
        return f"{self.head} {arrow} {body}." if body else f"{self.head} {arrow} ."

    def __str__(self):
        return self.key

    def __lt__(self, other):
        return self.key < other.key


def fact(text: str) -> Rule:
    return Rule(Literal.parse(text), (), RuleKind.FACT)


def strict(head: str, *body: str) -> Rule:
    if not body:
        return fact(head)
    return Rule(Literal.parse(head), tuple(map(Literal.parse, body)), RuleKind.STRICT)


def drule(head: str, *body: str) -> Rule:
    return Rule(Literal.parse(head), tuple(map(Literal.parse, body)), RuleKind.DEFEASIBLE)


def rules_key(rules: Iterable[Rule]) -> str:
    return "\n".join(sorted(r.key for r in rules))


def digest(text: str, size: int = 10) -> str:
    return hashlib.sha1(text.encode()).hexdigest()[:size]


class Compiled:
    """Bitmask view of a rule universe.

    Atom number i owns bit 2i (positive) and bit 2i+1 (negated), so a mask
    is contradictory exactly when some even bit and its odd neighbour are
    both set.
    """

    def __init__(self, rules: Iterable[Rule], extra: Iterable[Literal] = ()):
        rules = list(rules)
        atoms = {lit.atom for r in rules for lit in (r.head, *r.body)}
        atoms.update(lit.atom for lit in extra)
        self.atoms = sorted(atoms)
        self.slot = {a: i for i, a in enumerate(self.atoms)}
        self.width = 2 * len(self.atoms)
        self.even = sum(1 << (2 * i) for i in range(len(self.atoms)))
        self.code = {r: (self.bit(r.head), self.mask(r.body)) for r in rules}

    def bit(self, lit: Literal) -> int:
        return 2 * self.slot[lit.atom] + lit.negated

    def mask(self, lits: Iterable[Literal]) -> int:
        m = 0
        for lit in lits:
            m |= 1 << self.bit(lit)
        return m

    def knows(self, lit: Literal) -> bool:
        return lit.atom in self.slot

    def closure(self, rules: Iterable[Rule], seed: int = 0) -> int:
        heads, bodies = [], []
        for r in rules:
            h, b = self.code[r]
            heads.append(h)
            bodies.append(b)
        return kernel.closure(heads, bodies, seed, self.width)

    def has(self, mask: int, lit: Literal) -> bool:
        return lit.atom in self.slot and bool(mask >> self.bit(lit) & 1)

    def contradictory(self, mask: int) -> bool:
        return bool(mask & (mask >> 1) & self.even)

    def literals(self, mask: int) -> frozenset[Literal]:
        out = set()
        for atom, i in self.slot.items():
            if mask >> (2 * i) & 1:
                out.add(Literal(atom))
            if mask >> (2 * i + 1) & 1:
                out.add(Literal(atom, True))
        return frozenset(out)


def closure(rules: Iterable[Rule], seed: Iterable[Literal] = ()) -> frozenset[Literal]:
    rules = list(rules)
    seed = list(seed)
    comp = Compiled(rules, seed)
    return comp.literals(comp.closure(rules, comp.mask(seed)))


def derives(rules: Iterable[Rule], goal: Literal) -> bool:
    """True iff goal follows from rules by forward chaining."""
    rules = list(rules)
    comp = Compiled(rules, [goal])
    return comp.has(comp.closure(rules), goal)


def is_contradictory(rules: Iterable[Rule]) -> bool:
    rules = list(rules)
    comp = Compiled(rules)
    return comp.contradictory(comp.closure(rules))


def _strict_only(rules):
    return [r for r in rules if not r.is_defeasible]


def disagree(a: Literal, b: Literal, pi: Iterable[Rule]) -> bool:
    """Two literals disagree when Π plus both of them is contradictory."""
    strict_rules = _strict_only(pi)
    comp = Compiled(strict_rules, [a, b])
    return comp.contradictory(comp.closure(strict_rules, comp.mask([a, b])))


@dataclass(frozen=True)
class Program:
    pi: frozenset[Rule] = frozenset()
    delta: frozenset[Rule] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "pi", frozenset(self.pi))
        object.__setattr__(self, "delta", frozenset(self.delta))
        if any(r.is_defeasible for r in self.pi):
            raise ValueError("defeasible rule placed in the strict part")
        if any(not r.is_defeasible for r in self.delta):
            raise ValueError("strict rule placed in the defeasible part")
        comp = Compiled(self.pi)
        m = comp.closure(self.pi)
        if comp.contradictory(m):
            lit = min(l for l in comp.literals(m) if not l.negated and l.complement() in comp.literals(m))
            raise PiInconsistent(lit)

    @property
    def rules(self) -> frozenset[Rule]:
        return self.pi | self.delta

    def with_delta(self, delta: Iterable[Rule]) -> Program:
        return Program(self.pi, frozenset(delta))

    def literals(self) -> frozenset[Literal]:
        return frozenset(lit for r in self.rules for lit in (r.head, *r.body))

    def fingerprint(self) -> str:
        return digest(rules_key(self.rules), 16)

    def __str__(self):
        return serialize(self)


_TOKEN = re.compile(r"\s*(?:(%[^\n]*)|(<-|-<|~|,|\.)|([a-z][a-zA-Z0-9_]*)|(\S))")


def _tokens(text):
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(pos):
        row = bisect.bisect_right(line_starts, pos) - 1
        return row + 1, pos - line_starts[row] + 1

    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        comment, sym, ident, junk = m.groups()
        start = m.start(m.lastindex) if m.lastindex else m.end()
        pos = m.end()
        if comment:
            continue
        if junk:
            raise ProgramSyntaxError(*where(start), f"unexpected character {junk!r}")
        if sym or ident:
            yield (sym or ident), bool(ident), where(start)
    yield None, False, where(len(text))


def parse_program(text: str) -> Program:
    """Parse the textual program format.

    Statements end with a period; `<-` marks strict rules, `-<` defeasible
    ones, and `%` starts a comment running to the end of the line.
    """
    toks = list(_tokens(text))
    i = 0
    pi, delta = [], []

    def fail(msg):
        line, col = toks[i][2]
        raise ProgramSyntaxError(line, col, msg)

    def literal():
        nonlocal i
        neg = False
        if toks[i][0] == "~":
            neg = True
            i += 1
        tok, is_ident, _ = toks[i]
        if not is_ident:
            fail(f"expected a literal, found {tok or 'end of input'!r}")
        i += 1
        return Literal(tok, neg)

    while toks[i][0] is not None:
        head = literal()
        tok = toks[i][0]
        if tok == ".":
            i += 1
            pi.append(Rule(head, (), RuleKind.FACT))
            continue
        if tok not in ("<-", "-<"):
            fail(f"expected '.', '<-' or '-<', found {tok or 'end of input'!r}")
        i += 1
        body = []
        if toks[i][0] != ".":
            body.append(literal())
            while toks[i][0] == ",":
                i += 1
                body.append(literal())
        if toks[i][0] != ".":
            fail(f"expected '.', found {toks[i][0] or 'end of input'!r}")
        i += 1
        if tok == "-<":
            delta.append(Rule(head, tuple(body), RuleKind.DEFEASIBLE))
        elif body:
            pi.append(Rule(head, tuple(body), RuleKind.STRICT))
        else:
            i -= 1
            fail("a strict rule needs a body")
    return Program(frozenset(pi), frozenset(delta))


def parse_rules(text: str) -> frozenset[Rule]:
    prog = parse_program(text)
    return prog.rules


def serialize(program: Program) -> str:
    order = {RuleKind.FACT: 0, RuleKind.STRICT: 1, RuleKind.DEFEASIBLE: 2}
    rules = sorted(program.rules, key=lambda r: (order[r.kind], r.key))
    return "".join(r.key + "\n" for r in rules)
