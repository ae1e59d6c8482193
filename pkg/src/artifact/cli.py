"""Command-line front end.

    delp-atc check program.delp
    delp-atc query program.delp a --prefs program.prefs
    delp-atc tree program.delp a > trees.dot
    delp-atc revise program.delp --arg new.delp --criterion rules --trace run.trace
    delp-atc verify program.delp --arg new.delp
    delp-atc bench --seed 7 --count 50

Exit status: 0 ok, 1 usage, 2 parse error, 3 semantic error (inconsistent
strict part, invalid external argument, unsatisfiable strict mode), 4 search
budget exceeded.
"""

from __future__ import annotations

import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from artifact.argumentation import ComparisonCriterion, parse_argument, parse_preferences, reasoner
from artifact.atc import ALIASES, PRESETS, Loop, check_postulates, preset, revision
from artifact.dialectics import build_tree, classify, mark, sequence_text, to_dot, attacking_indices, warranted_literals
from artifact.errors import DelpError
from artifact.kb import Literal, Program, parse_program, serialize

CRITERIA = sorted(PRESETS) + sorted(ALIASES)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise click.UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path):
    return parse_program(_read(path))


def _crit(prefs, rule_count, strict_prefs=False):
    if rule_count:
        return ComparisonCriterion.rule_count()
    if prefs:
        return parse_preferences(_read(prefs), strict=strict_prefs)
    return None


def _settings(criterion, strict_preservation, profitability, minimal):
    if strict_preservation and profitability:
        raise click.UsageError("--strict-preservation and --profitability are exclusive")
    loop = Loop.STRICT if strict_preservation else Loop.PROFITABILITY if profitability else Loop.PRESERVATION
    return preset(criterion, loop=loop, minimal=minimal)


prefs_option = click.option("--prefs", type=click.Path(dir_okay=False), help="Preference file (prefer ID over ID.).")
rule_count_option = click.option("--rule-count", is_flag=True, help="Prefer arguments with fewer rules instead of a table.")


def revision_options(fn):
    fn = click.option("--arg", "arg_path", required=True, type=click.Path(dir_okay=False),
                      help="Argument file: defeasible rules and a claim line.")(fn)
    fn = click.option("--criterion", type=click.Choice(CRITERIA), default="tree", show_default=True)(fn)
    fn = click.option("--strict-preservation", is_flag=True, help="Forbid collateral cuts outright.")(fn)
    fn = click.option("--profitability", is_flag=True, help="Steer collateral cuts onto attacking lines.")(fn)
    fn = click.option("--minimal-incisions/--no-minimal-incisions", default=True, show_default=True,
                      help="Cut a single rule per selected argument.")(fn)
    return rule_count_option(prefs_option(fn))


@click.group()
@click.version_option(package_name="artifact")
def cli():
    """Defeasible logic programs and argument-driven revision."""


@cli.command()
@click.argument("program", type=click.Path(dir_okay=False))
def check(program):
    """Parse PROGRAM and confirm its strict part is consistent."""
    prog = _load(program)
    facts = sum(1 for r in prog.pi if not r.body)
    click.echo(f"ok: {facts} facts, {len(prog.pi) - facts} strict rules, {len(prog.delta)} defeasible rules")


@cli.command()
@click.argument("program", type=click.Path(dir_okay=False))
@click.argument("literal")
@prefs_option
@rule_count_option
def query(program, literal, prefs, rule_count):
    """Report whether LITERAL is warranted."""
    prog = _load(program)
    crit = _crit(prefs, rule_count)
    goal = Literal.parse(literal)
    args = reasoner(prog, crit).arguments_for(goal)
    if not args:
        click.echo("NO ARGUMENT")
        return
    from artifact.dialectics import argument_warranted

    ok = any(argument_warranted(prog, a, crit) for a in args)
    click.echo("WARRANTED" if ok else "NOT WARRANTED")


@cli.command()
@click.argument("program", type=click.Path(dir_okay=False))
@click.argument("literal")
@prefs_option
@rule_count_option
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write DOT here instead of stdout.")
def tree(program, literal, prefs, rule_count, output):
    """Render the marked tree of every argument for LITERAL as DOT."""
    prog = _load(program)
    crit = _crit(prefs, rule_count)
    chunks = []
    for arg in reasoner(prog, crit).arguments_for(Literal.parse(literal)):
        t = build_tree(prog, arg, crit)
        m = mark(t)
        att = attacking_indices(t, m)
        notes = [f"// root {arg.id} {arg}"]
        for j, line in enumerate(t.lines):
            cls = classify(line, t, m)
            notes.append(f"// l{j + 1} {sequence_text(m.sequence(line))} {cls.value if cls else '?'}"
                         f"{' attacking-set' if j in att else ''}")
        dot = to_dot(t, m, att).replace("digraph tree", f"digraph tree_{arg.id}", 1)
        chunks.append("\n".join(notes) + "\n" + dot)
    text = "".join(chunks)
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


@cli.command()
@click.argument("program", type=click.Path(dir_okay=False))
@revision_options
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the revised program here.")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), help="Write the revision trace here.")
def revise(program, arg_path, criterion, strict_preservation, profitability, minimal_incisions,
           prefs, rule_count, output, trace_path):
    """Revise PROGRAM so the argument in --arg becomes warranted."""
    prog = _load(program)
    arg = parse_argument(_read(arg_path))
    settings = _settings(criterion, strict_preservation, profitability, minimal_incisions)
    result = revision(prog, arg, settings, _crit(prefs, rule_count))
    if trace_path:
        Path(trace_path).write_text("".join(r + "\n" for r in result.trace))
    header = [f"% removed: {r.key}" for r in sorted(result.removed)]
    header += [f"% note: {n}" for n in result.notices]
    text = "\n".join(header) + ("\n" if header else "") + serialize(result.program)
    if output:
        Path(output).write_text(text)
        for line in header:
            click.echo(line)
    else:
        click.echo(text, nl=False)


@cli.command()
@click.argument("program", type=click.Path(dir_okay=False))
@revision_options
def verify(program, arg_path, criterion, strict_preservation, profitability, minimal_incisions, prefs, rule_count):
    """Revise, then check inclusion, success and core-retainment."""
    prog = _load(program)
    arg = parse_argument(_read(arg_path))
    crit = _crit(prefs, rule_count)
    settings = _settings(criterion, strict_preservation, profitability, minimal_incisions)
    result = revision(prog, arg, settings, crit)
    report = check_postulates(prog, result.program, arg, crit)

    def word(v):
        return "unknown" if v is None else "yes" if v else "no"

    click.echo(f"inclusion: {word(report.inclusion)}")
    click.echo(f"success: {word(report.success)}")
    click.echo(f"core-retainment: {word(report.core_retainment)}")
    for rule, witness in report.witnesses.items():
        shown = "none found" if witness is None else "{" + " ".join(r.key for r in sorted(witness)) + "}"
        click.echo(f"  {rule.key} witness {shown}")
    if not report.ok:
        sys.exit(3)


def _bench_one(job):
    seed, delta, density = job
    from artifact.oracle import SizeParams, generate

    inst = generate(seed, SizeParams(delta=delta, density=density))
    if inst.external is None:
        return seed, None
    before = warranted_literals(Program(inst.program.pi, inst.program.delta | inst.external.rules), inst.prefs)
    row = {}
    for name in sorted(PRESETS):
        try:
            r = revision(inst.program, inst.external, preset(name), inst.prefs)
        except DelpError:
            row[name] = None
            continue
        lines = 0 if r.sets is None else len(r.sets.incision_aware | r.sets.widened)
        after = warranted_literals(r.program, inst.prefs)
        row[name] = (len(r.removed), lines, len(before ^ after))
    return seed, row


@cli.command()
@click.option("--seed", default=0, show_default=True, help="First seed.")
@click.option("--count", default=40, show_default=True, help="Number of generated instances.")
@click.option("--delta", default=8, show_default=True, help="Defeasible rules per instance.")
@click.option("--density", default=0.5, show_default=True, help="Preference table density.")
@click.option("--corpus", type=click.Path(dir_okay=False), help="File of seed,size,density lines.")
@click.option("--workers", default=1, show_default=True, help="Worker processes.")
def bench(seed, count, delta, density, corpus, workers):
    """Compare the criteria on generated instances."""
    from artifact.oracle import read_corpus

    jobs = read_corpus(_read(corpus)) if corpus else [(s, delta, density) for s in range(seed, seed + count)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_bench_one, jobs))
    else:
        rows = [_bench_one(j) for j in jobs]
    click.echo(f"{'criterion':<12}{'runs':>6}{'rules':>8}{'lines':>8}{'warrant-delta':>15}")
    for name in sorted(PRESETS):
        got = [row[name] for _, row in rows if row and row.get(name)]
        if not got:
            click.echo(f"{name:<12}{0:>6}")
            continue
        mean = [statistics.fmean(x[i] for x in got) for i in range(3)]
        click.echo(f"{name:<12}{len(got):>6}{mean[0]:>8.2f}{mean[1]:>8.2f}{mean[2]:>15.2f}")


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="delp-atc", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        sys.exit(1)
    except click.UsageError as exc:
        exc.show()
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except DelpError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(exc.exit_code)
    except SystemExit:
        raise
    sys.exit(0)


if __name__ == "__main__":
    main()
