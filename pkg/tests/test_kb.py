import pytest

from artifact.errors import PiInconsistent, ProgramSyntaxError
from artifact.kb import (Literal, Program, Rule, RuleKind, closure, derives, disagree, drule, fact,
                         is_contradictory, parse_program, serialize, strict)


def test_literal_parse_and_complement():
    lit = Literal.parse("~ a")
    assert lit == Literal("a", True)
    assert str(lit) == "~a"
    assert lit.complement() == Literal("a")
    assert lit.complement().complement() == lit


def test_parse_splits_strict_and_defeasible(p1):
    assert len(p1.pi) == 3
    assert len(p1.delta) == 9
    assert fact("t") in p1.pi
    assert strict("p", "t") in p1.pi
    assert drule("~a", "y") in p1.delta


def test_comments_and_conjunctions():
    prog = parse_program("% header\nq. r. p -< q, ~r. % trailing\n")
    (rule,) = prog.delta
    assert rule.body == (Literal("q"), Literal("r", True))


def test_presumption_has_empty_body():
    prog = parse_program("a -< .")
    (rule,) = prog.delta
    assert rule.body == () and rule.kind is RuleKind.DEFEASIBLE


@pytest.mark.parametrize("text, line, column", [
    ("a.\nb <- .", 2, 6),
    ("a -< b", 1, 7),
    ("a -< b c.", 1, 8),
    ("a. $", 1, 4),
    ("-< a.", 1, 1),
])
def test_syntax_errors_carry_positions(text, line, column):
    with pytest.raises(ProgramSyntaxError) as err:
        parse_program(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert err.value.exit_code == 2


def test_contradictory_strict_part_rejected():
    with pytest.raises(PiInconsistent) as err:
        parse_program("a. ~b <- a. b.")
    assert err.value.literal == Literal("b")


def test_serialize_round_trips(p1):
    text = serialize(p1)
    assert parse_program(text) == p1
    assert text.splitlines()[0] == "t."


def test_derivation_helpers(p1):
    assert derives(p1.rules, Literal.parse("~a"))
    assert Literal("p") in closure(p1.pi)
    assert not is_contradictory(p1.pi)
    assert is_contradictory(p1.rules)


def test_disagreement_through_strict_rules():
    pi = [strict("~b", "a")]
    assert disagree(Literal("a"), Literal("b"), pi)
    assert disagree(Literal("c"), Literal("c", True), [])
    assert not disagree(Literal("a"), Literal("c"), pi)


def test_misplaced_rules_rejected():
    with pytest.raises(ValueError):
        Program(frozenset([drule("a")]))
    with pytest.raises(ValueError):
        Program(frozenset(), frozenset([fact("a")]))


def test_fingerprint_ignores_order():
    a = parse_program("a. b -< a. c -< b.")
    b = parse_program("c -< b. a. b -< a.")
    assert a.fingerprint() == b.fingerprint()
    assert Rule(Literal("b"), (Literal("a"),)) in b.delta
