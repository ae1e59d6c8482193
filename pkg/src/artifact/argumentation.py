"""Argument structures, subarguments and defeat.

An argument is a minimal set of defeasible rules that, together with the
strict knowledge, derives a claim without deriving a contradiction.

>>> from artifact.kb import parse_program, Literal
>>> prog = parse_program("t. ~w -< t. w -< y. y -< p. p.")
>>> [str(a) for a in build_arguments(prog, Literal("w"))]
['<{w -< y; y -< p}, w>']
"""

from __future__ import annotations

import enum
import functools
import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable

from artifact.errors import InvalidArgument, InvalidExternal, MissingPreference
from artifact.kb import Compiled, Literal, Program, Rule, digest, rules_key


def argument_id(rules: Iterable[Rule], claim: Literal) -> str:
    return digest(f"{claim}|{rules_key(rules)}")


@dataclass(frozen=True)
class ArgumentStructure:
    rules: frozenset[Rule]
    claim: Literal
    id: str = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", frozenset(self.rules))
        object.__setattr__(self, "id", argument_id(self.rules, self.claim))

    def __str__(self):
        inner = "; ".join(r.key[:-1] for r in sorted(self.rules))
        return f"<{{{inner}}}, {self.claim}>"

    def __lt__(self, other):
        return (len(self.rules), self.id) < (len(other.rules), other.id)

    @property
    def is_empty(self):
        return not self.rules


class DefeatKind(enum.Enum):
    PROPER = "proper"
    BLOCKING = "blocking"


class CompareMode(enum.Enum):
    TABLE = "table"
    RULE_COUNT = "rule-count"


@dataclass(frozen=True)
class ComparisonCriterion:
    """Decides whether a counter-argument is a proper or blocking defeater.

    In table mode an entry (winner, loser) states that winner is strictly
    preferred. Pairs without an entry are equi-preferred unless `strict` is
    set, in which case the gap is reported.
    """

    mode: CompareMode = CompareMode.TABLE
    table: frozenset[tuple[str, str]] = frozenset()
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "table", frozenset(self.table))
        for a, b in self.table:
            if a == b:
                raise ValueError(f"argument {a} preferred over itself")

    @classmethod
    def rule_count(cls):
        return cls(CompareMode.RULE_COUNT)

    def compare(self, defeater: ArgumentStructure, disputed: ArgumentStructure) -> DefeatKind | None:
        if self.mode is CompareMode.RULE_COUNT:
            n, m = len(defeater.rules), len(disputed.rules)
            if n < m:
                return DefeatKind.PROPER
            return DefeatKind.BLOCKING if n == m else None
        if (defeater.id, disputed.id) in self.table:
            return DefeatKind.PROPER
        if (disputed.id, defeater.id) in self.table:
            return None
        if self.strict:
            raise MissingPreference((defeater.id, disputed.id))
        return DefeatKind.BLOCKING


_PREFER = re.compile(r"prefer\s+(\w+)\s+over\s+(\w+)\s*\.")


def parse_preferences(text: str, strict: bool = False) -> ComparisonCriterion:
    """Read `prefer X over Y.` statements; `%` starts a comment."""
    pairs = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        pos = 0
        while pos < len(line):
            m = _PREFER.match(line, pos)
            if not m:
                from artifact.errors import ProgramSyntaxError

                raise ProgramSyntaxError(lineno, pos + 1, "expected 'prefer ID over ID.'")
            pairs.add((m.group(1), m.group(2)))
            pos = m.end()
            while pos < len(line) and line[pos].isspace():
                pos += 1
    return ComparisonCriterion(CompareMode.TABLE, frozenset(pairs), strict)


@dataclass(frozen=True)
class Defeat:
    defeater: ArgumentStructure
    target: ArgumentStructure
    point: Literal
    kind: DefeatKind
    disputed: ArgumentStructure


class Reasoner:
    """Argument construction for one program, with per-query caches."""

    def __init__(self, program: Program, criterion: ComparisonCriterion | None = None):
        self.program = program
        self.criterion = criterion or ComparisonCriterion()
        self.comp = Compiled(program.rules)
        self.pi = sorted(program.pi)
        self.strict_base = self.comp.closure(self.pi)
        self.by_head = {}
        for r in program.rules:
            self.by_head.setdefault(r.head, []).append(r)
        self._args = {}
        self._subs = {}
        self._defeats = {}
        self._conflicts = {}

    def closure_with(self, rules: Iterable[Rule]) -> int:
        return self.comp.closure(itertools.chain(self.pi, rules))

    def consistent(self, rules: Iterable[Rule]) -> bool:
        return not self.comp.contradictory(self.closure_with(rules))

    def relevant(self, goal: Literal) -> list[Rule]:
        seen, todo, out = {goal}, [goal], set()
        while todo:
            lit = todo.pop()
            for r in self.by_head.get(lit, ()):
                if r.is_defeasible:
                    out.add(r)
                for b in r.body:
                    if b not in seen:
                        seen.add(b)
                        todo.append(b)
        return sorted(out)

    def arguments_for(self, goal: Literal) -> tuple[ArgumentStructure, ...]:
        if goal not in self._args:
            self._args[goal] = tuple(sorted(self._minimal_supports(goal, self.relevant(goal))))
        return self._args[goal]

    def _minimal_supports(self, goal, pool, check_consistency=True):
        if not self.comp.knows(goal):
            return []
        if self.comp.has(self.strict_base, goal):
            return [ArgumentStructure(frozenset(), goal)]
        bit = self.comp.bit(goal)
        found = []
        for size in range(1, len(pool) + 1):
            for combo in itertools.combinations(range(len(pool)), size):
                m = 0
                for i in combo:
                    m |= 1 << i
                if any(f & m == f for f in found):
                    continue
                chosen = [pool[i] for i in combo]
                closed = self.closure_with(chosen)
                if not closed >> bit & 1:
                    continue
                if check_consistency and self.comp.contradictory(closed):
                    continue
                found.append(m)
        return [ArgumentStructure(frozenset(pool[i] for i in range(len(pool)) if f >> i & 1), goal) for f in found]

    def all_arguments(self) -> tuple[ArgumentStructure, ...]:
        lits = set()
        for atom in self.comp.atoms:
            lits.add(Literal(atom))
            lits.add(Literal(atom, True))
        out = set()
        for lit in lits:
            out.update(self.arguments_for(lit))
        return tuple(sorted(out))

    def subarguments(self, arg: ArgumentStructure) -> tuple[ArgumentStructure, ...]:
        if arg not in self._subs:
            # literals the rules mention, plus whatever they newly derive
            # through strict rules
            fresh = self.closure_with(arg.rules) & ~self.strict_base
            claims = {arg.claim} | self.comp.literals(fresh)
            for r in arg.rules:
                claims.add(r.head)
                claims.update(r.body)
            pool = sorted(arg.rules)
            subs = set()
            for c in claims:
                subs.update(self._minimal_supports(c, pool, check_consistency=False))
            self._subs[arg] = tuple(sorted(subs))
        return self._subs[arg]

    def conflicts(self, lit: Literal) -> list[Literal]:
        """Every literal of the signature that disagrees with lit."""
        if lit not in self._conflicts:
            out = []
            if self.comp.knows(lit):
                seed = 1 << self.comp.bit(lit)
                for atom in self.comp.atoms:
                    for other in (Literal(atom), Literal(atom, True)):
                        m = self.comp.closure(self.pi, seed | 1 << self.comp.bit(other))
                        if self.comp.contradictory(m):
                            out.append(other)
            self._conflicts[lit] = out
        return self._conflicts[lit]

    def defeaters(self, target: ArgumentStructure) -> tuple[Defeat, ...]:
        if target not in self._defeats:
            out = []
            if target.rules:
                for sub in self.subarguments(target):
                    if not sub.rules:
                        continue
                    for lit in self.conflicts(sub.claim):
                        for d in self.arguments_for(lit):
                            if not d.rules:
                                continue
                            kind = self.criterion.compare(d, sub)
                            if kind is not None:
                                out.append(Defeat(d, target, sub.claim, kind, sub))
            out.sort(key=lambda x: (x.defeater, str(x.point), x.disputed.id))
            self._defeats[target] = tuple(out)
        return self._defeats[target]

    def defeater_kinds(self, target: ArgumentStructure) -> list[tuple[ArgumentStructure, DefeatKind]]:
        """One entry per distinct defeater: proper if any of its attacks is proper."""
        kinds = {}
        for d in self.defeaters(target):
            if kinds.get(d.defeater) is not DefeatKind.PROPER:
                kinds[d.defeater] = d.kind
        return sorted(kinds.items(), key=lambda kv: kv[0])

    def is_argument(self, arg: ArgumentStructure) -> bool:
        if any(not r.is_defeasible for r in arg.rules):
            return False
        rules = sorted(arg.rules)
        if not all(r in self.comp.code for r in rules):
            return False
        closed = self.closure_with(rules)
        if self.comp.contradictory(closed) or not self.comp.has(closed, arg.claim):
            return False
        for i in range(len(rules)):
            if self.comp.has(self.closure_with(rules[:i] + rules[i + 1:]), arg.claim):
                return False
        return True


@functools.lru_cache(maxsize=256)
def reasoner(program: Program, criterion: ComparisonCriterion | None = None) -> Reasoner:
    return Reasoner(program, criterion)


def build_arguments(program: Program, goal: Literal) -> frozenset[ArgumentStructure]:
    return frozenset(reasoner(program).arguments_for(goal))


def subarguments(arg: ArgumentStructure, program: Program) -> frozenset[ArgumentStructure]:
    return frozenset(reasoner(program).subarguments(arg))


def defeaters(program: Program, target: ArgumentStructure, crit: ComparisonCriterion | None = None) -> frozenset[Defeat]:
    return frozenset(reasoner(program, crit).defeaters(target))


def make_argument(program: Program, rules: Iterable[Rule], claim: Literal) -> ArgumentStructure:
    """Build an argument of program, raising InvalidArgument if it is not one."""
    arg = ArgumentStructure(frozenset(rules), claim)
    if not reasoner(program).is_argument(arg):
        raise InvalidArgument(f"{arg} is not an argument of the program")
    return arg


def is_external(program: Program, arg: ArgumentStructure) -> bool:
    if arg.rules <= program.delta:
        return False
    widened = Program(program.pi, program.delta | arg.rules)
    if any(not r.is_defeasible for r in arg.rules):
        raise InvalidExternal("external arguments contain defeasible rules only")
    r = reasoner(widened)
    closed = r.closure_with(arg.rules)
    if r.comp.contradictory(closed):
        raise InvalidExternal(f"{arg} is contradictory with the strict knowledge")
    if not r.is_argument(arg):
        raise InvalidExternal(f"{arg} does not minimally derive {arg.claim}")
    return True


def parse_argument(text: str) -> ArgumentStructure:
    """Read an argument file: defeasible rules plus a `claim: lit.` line.

    Without an explicit claim line the head of the single rule that no other
    rule's body uses is taken as the claim.
    """
    from artifact.kb import parse_program

    claim = None
    body_lines = []
    for raw in text.splitlines():
        line = raw.split("%", 1)[0]
        m = re.match(r"\s*claim\s*:\s*(~?\s*[a-z][a-zA-Z0-9_]*)\s*\.?\s*$", line)
        if m:
            claim = Literal.parse(m.group(1))
        else:
            body_lines.append(line)
    prog = parse_program("\n".join(body_lines))
    if prog.pi:
        raise InvalidArgument("argument files contain defeasible rules only")
    rules = prog.delta
    if claim is None:
        used = {b for r in rules for b in r.body}
        tops = {r.head for r in rules if r.head not in used}
        if len(tops) != 1:
            raise InvalidArgument("cannot infer the claim; add a 'claim: lit.' line")
        claim = tops.pop()
    return ArgumentStructure(rules, claim)
