"""Command-line interface.

Text formats round-trip bit-exactly after canonicalization; ``--format
json`` switches every command to machine-readable output.  Exit codes:
0 success, 1 usage or I/O error, 2 detection failure or exhausted search
budget, 3 infeasible target.  The environment variable TROPILINEAR_BUDGET
overrides the default search budgets.
"""

from __future__ import annotations

import csv
import json
import os
import sys

import click

from . import diophantine, dynamics, gallery, semilinear, spans, teg, viz
from .tropical import (
    BudgetExceeded,
    FormatError,
    NEG_INF,
    ShapeError,
    TropilinearError,
    format_matrix,
    format_scalar,
    format_vector,
    parse_vector,
)

EXIT_USAGE = 1
EXIT_EXHAUSTED = 2
EXIT_INFEASIBLE = 3


def _scalar_json(x):
    return x if isinstance(x, int) else repr(x)


def _vec_json(v):
    return [_scalar_json(x) for x in v]


def _matrix_json(m):
    return {"flavor": m.flavor, "rows": m.rows, "cols": m.cols,
            "data": [_vec_json(r) for r in m.data]}


def _set_json(s):
    return {"dim": s.dim,
            "components": [{"base": _vec_json(c.base),
                            "periods": [list(p) for p in c.periods]}
                           for c in s.components]}


def _emit(ctx, text: str, payload):
    if ctx.obj["format"] == "json":
        click.echo(json.dumps(payload, sort_keys=True))
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _budget(value):
    if value is not None:
        return value
    env = os.environ.get("TROPILINEAR_BUDGET")
    return int(env) if env else diophantine.DEFAULT_NODE_BUDGET


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_system(path: str) -> dynamics.LtiSystem:
    return dynamics.parse_system(_read(path))


def _load_set(path: str) -> semilinear.SemilinearSet:
    return semilinear.parse_set(_read(path))


def _load_gens(path: str) -> spans.GeneratorSet:
    """Generator sets use the semilinear format; a period-free file is a
    finite family."""
    s = _load_set(path)
    if all(not c.periods for c in s.components):
        return spans.finite_gens([c.base for c in s.components], dim=s.dim)
    return spans.semilinear_gens(s)


@click.group()
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text", help="Output format for results.")
@click.pass_context
def cli(ctx, fmt):
    """Exact integer max-plus toolkit: semilinear sets, rational
    semimodules, reachability/observability of timed event graphs."""
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt


@cli.command()
@click.option("--sys", "sys_file", required=True, metavar="FILE",
              help="System file with A:, B: and optional C: blocks.")
@click.option("--k", type=int, default=None, help="Finite horizon.")
@click.option("--omega", is_flag=True, help="Full reachable family.")
@click.option("--window", type=int, default=dynamics.DEFAULT_WINDOW,
              show_default=True, help="Confirmation window.")
@click.option("--max-period", type=int, default=dynamics.DEFAULT_MAX_PERIOD,
              show_default=True)
@click.option("--max-transient", type=int, default=None)
@click.pass_context
def reach(ctx, sys_file, k, omega, window, max_period, max_transient):
    """Reachability matrix (--k) or semilinear reachable family (--omega)."""
    system = _load_system(sys_file)
    if omega == (k is not None):
        raise click.UsageError("choose exactly one of --k or --omega")
    if k is not None:
        mat = dynamics.reach_k(system, k)
        _emit(ctx, format_matrix(mat), {"reach_k": _matrix_json(mat)})
        return
    gens, cert = dynamics.reach_omega(system, window, max_period, max_transient)
    text = semilinear.format_set(gens.sl)
    text += (f"# certificate: period={cert.period} transient={cert.transient}"
             f" window={cert.window}\n")
    _emit(ctx, text, {"reach_omega": _set_json(gens.sl),
                      "certificate": {"period": cert.period,
                                      "transient": cert.transient,
                                      "window": cert.window}})


@cli.command()
@click.option("--sys", "sys_file", required=True, metavar="FILE")
@click.option("--omega", is_flag=True, required=True,
              help="Observable congruence basis.")
@click.option("--window", type=int, default=dynamics.DEFAULT_WINDOW,
              show_default=True)
@click.option("--max-period", type=int, default=dynamics.DEFAULT_MAX_PERIOD,
              show_default=True)
@click.option("--max-transient", type=int, default=None)
@click.pass_context
def observe(ctx, sys_file, omega, window, max_period, max_transient):
    """Finite basis of the observable congruence."""
    system = _load_system(sys_file)
    basis = dynamics.obs_omega(system, window, max_period, max_transient)
    text = format_matrix(basis.block)
    text += (f"# certificate: period={basis.period} "
             f"transient={basis.transient} window={basis.window}\n")
    _emit(ctx, text, {"block": _matrix_json(basis.block),
                      "period": basis.period, "transient": basis.transient,
                      "window": basis.window})


@cli.command()
@click.option("--sys", "sys_file", required=True, metavar="FILE")
@click.option("--xi", required=True, help="State, e.g. \"0 -3 5\".")
@click.pass_context
def classmax(ctx, sys_file, xi):
    """Greatest state observationally indistinguishable from --xi."""
    system = _load_system(sys_file)
    basis = dynamics.obs_omega(system)
    top = dynamics.class_max(basis, parse_vector(xi))
    _emit(ctx, format_vector(top), {"class_max": _vec_json(top)})


@cli.command()
@click.option("--sys", "sys_file", required=True, metavar="FILE")
@click.option("--xi", required=True)
@click.option("--xi2", required=True)
@click.pass_context
def congruent(ctx, sys_file, xi, xi2):
    """Are two states observationally indistinguishable?"""
    system = _load_system(sys_file)
    basis = dynamics.obs_omega(system)
    ans = dynamics.congruent(basis, parse_vector(xi), parse_vector(xi2))
    _emit(ctx, "true" if ans else "false", {"congruent": ans})


@cli.command()
@click.option("--sys", "sys_file", required=True, metavar="FILE")
@click.option("--k", type=int, required=True, help="Horizon.")
@click.option("--target", required=True, help="Target state z.")
@click.pass_context
def control(ctx, sys_file, k, target):
    """Control sequence steering epsilon to the target in k steps."""
    system = _load_system(sys_file)
    z = parse_vector(target)
    u = dynamics.control_solve(system, k, z)
    if u is None:
        _emit(ctx, "infeasible", {"control": None})
        sys.exit(EXIT_INFEASIBLE)
    p = system.p
    chronological = [u[(k - 1 - i) * p:(k - i) * p] for i in range(k)]
    text = "U: " + format_vector(u) + "\n"
    text += "\n".join(f"u({i + 1}): " + format_vector(step)
                      for i, step in enumerate(chronological))
    _emit(ctx, text, {"control": _vec_json(u),
                      "inputs": [_vec_json(s) for s in chronological]})


@cli.command()
@click.option("--gens", "gens_files", required=True, multiple=True,
              metavar="FILE",
              help="Generator set file (semilinear format); repeat the "
                   "option to test membership in an intersection of spans "
                   "(no intersection representation is constructed).")
@click.option("--x", "x_text", required=True, help="Query vector.")
@click.option("--budget", type=int, default=None)
@click.pass_context
def member(ctx, gens_files, x_text, budget):
    """Span membership of a vector, optionally in several spans at once."""
    x = parse_vector(x_text)
    budget = _budget(budget)
    verdict = True
    for path in gens_files:
        res = spans.span_member_semilinear(_load_gens(path), x, budget)
        if res is spans.BOUND_EXHAUSTED:
            _emit(ctx, "bound_exhausted", {"member": "bound_exhausted"})
            sys.exit(EXIT_EXHAUSTED)
        if res is None:
            verdict = False
            break
    _emit(ctx, "true" if verdict else "false", {"member": verdict})


@cli.group()
def sl():
    """Semilinear set algebra."""


@sl.command("union")
@click.argument("left")
@click.argument("right")
@click.pass_context
def sl_union(ctx, left, right):
    out = semilinear.union(_load_set(left), _load_set(right))
    _emit(ctx, semilinear.format_set(out), _set_json(out))


@sl.command("sum")
@click.argument("left")
@click.argument("right")
@click.pass_context
def sl_sum(ctx, left, right):
    """Monoid (entrywise) sum of two sets."""
    out = semilinear.msum(_load_set(left), _load_set(right))
    _emit(ctx, semilinear.format_set(out), _set_json(out))


@sl.command("star")
@click.argument("file")
@click.pass_context
def sl_star(ctx, file):
    """Kleene star of the finite vector set given as period-free
    components."""
    s = _load_set(file)
    if any(c.periods for c in s.components):
        raise click.UsageError("star input must be period-free components")
    out = semilinear.star([c.base for c in s.components], dim=s.dim)
    _emit(ctx, semilinear.format_set(out), _set_json(out))


@sl.command("intersect")
@click.argument("left")
@click.argument("right")
@click.option("--budget", type=int, default=None)
@click.pass_context
def sl_intersect(ctx, left, right, budget):
    out = semilinear.intersect(_load_set(left), _load_set(right),
                               _budget(budget))
    _emit(ctx, semilinear.format_set(out), _set_json(out))


@sl.command("project")
@click.argument("file")
@click.option("--keep", required=True,
              help="Comma-separated 1-based coordinates to keep.")
@click.pass_context
def sl_project(ctx, file, keep):
    try:
        idx = [int(t) - 1 for t in keep.split(",") if t]
    except ValueError:
        raise click.UsageError(f"bad --keep list {keep!r}") from None
    out = semilinear.project(_load_set(file), idx)
    _emit(ctx, semilinear.format_set(out), _set_json(out))


@sl.command("member")
@click.argument("file")
@click.option("--x", "x_text", required=True)
@click.option("--budget", type=int, default=None)
@click.pass_context
def sl_member(ctx, file, x_text, budget):
    ans = semilinear.member(_load_set(file), parse_vector(x_text),
                            _budget(budget))
    _emit(ctx, "true" if ans else "false", {"member": ans})


@sl.command("normalize")
@click.argument("file")
@click.pass_context
def sl_normalize(ctx, file):
    """Parse (normalizing raw infinite periods) and print canonically."""
    out = _load_set(file)
    _emit(ctx, semilinear.format_set(out), _set_json(out))


@cli.command()
@click.option("--coeffs", required=True,
              help="Equation rows, e.g. \"1 1 -2; 0 1 -1\".")
@click.option("--rhs", default=None,
              help="Right-hand side; omitted means homogeneous.")
@click.option("--budget", type=int, default=None)
@click.pass_context
def hilbert(ctx, coeffs, rhs, budget):
    """Hilbert basis (homogeneous) or minimal solutions (with --rhs)."""
    try:
        rows = tuple(tuple(int(t) for t in row.split())
                     for row in coeffs.split(";") if row.strip())
        rvec = tuple(int(t) for t in rhs.split()) if rhs else ()
        system = diophantine.LinSystem(rows, rvec)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    if system.is_homogeneous() and rhs is None:
        out = diophantine.hilbert_basis(system, _budget(budget))
    else:
        out = diophantine.min_solutions(system, _budget(budget))
    text = "\n".join(" ".join(str(c) for c in v) for v in out)
    _emit(ctx, text if text else "(none)",
          {"solutions": [list(v) for v in out]})


@cli.group("teg")
def teg_group():
    """Timed event graph commands."""


@teg_group.command("compile")
@click.argument("file")
@click.pass_context
def teg_compile(ctx, file):
    """Compile a TEG description to the dater system file."""
    system = teg.compile_teg(teg.parse_teg(_read(file)))
    _emit(ctx, dynamics.format_system(system),
          {"A": _matrix_json(system.a), "B": _matrix_json(system.b),
           "C": _matrix_json(system.c) if system.c is not None else None})


@cli.group("gallery")
def gallery_group():
    """Worked counterexamples."""


@gallery_group.command("simon")
@click.option("--max-n", type=int, default=5, show_default=True)
@click.option("--max-len", type=int, default=gallery.DEFAULT_MAX_WORD_LENGTH,
              show_default=True)
@click.pass_context
def gallery_simon(ctx, max_n, max_len):
    """Growth table of the min-plus score automaton."""
    rows = []
    for n in range(1, max_n + 1):
        got = gallery.simon_growth(n, max_len)
        rows.append({"n": n, "min_length": got, "quadratic": (n * n + n) // 2})
    text = "\n".join(f"n={r['n']} min_length={r['min_length']} "
                     f"quadratic={r['quadratic']}" for r in rows)
    _emit(ctx, text, {"growth": rows})


@gallery_group.command("figcs")
@click.option("--max-len", type=int, required=True)
@click.option("--out", "out_path", required=True, metavar="CSV")
@click.option("--fig", "fig_path", default=None, metavar="IMG",
              help="Also render the staircase scatter to this image file.")
@click.pass_context
def gallery_figcs(ctx, max_len, out_path, fig_path):
    """Exact staircase point cloud, written as CSV (and optional figure)."""
    res = gallery.fig_cs_points(max_len)
    extremal = set(res.extremal)
    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["score", "neg_length", "third", "extremal"])
        for p in res.points:
            writer.writerow([format_scalar(p[0]), format_scalar(p[1]),
                             format_scalar(p[2]), int(p in extremal)])
    if fig_path:
        xy = [(p[0], p[1]) for p in res.points]
        bold = [(p[0], p[1]) for p in res.extremal]
        viz.save_scatter_figure(fig_path, xy, bold, xlabel="score",
                                ylabel="-length", title="score staircase")
    msg = (f"wrote {len(res.points)} points ({len(res.extremal)} extremal) "
           f"to {out_path}")
    _emit(ctx, msg, {"points": len(res.points),
                     "extremal": len(res.extremal), "csv": out_path,
                     "figure": fig_path})


@cli.command()
@click.option("--points", "points_file", required=True, metavar="FILE",
              help="One 3-dimensional vector per line.")
@click.option("--mode", type=click.Choice(["exponential", "orthogonal"]),
              default="exponential", show_default=True)
@click.option("--beta", type=float, default=1.0, show_default=True)
@click.option("--segments", default="",
              help="Index pairs i-j, comma separated, drawn as spans.")
@click.option("--out", "out_path", default=None, metavar="SVG",
              help="Output file; stdout when omitted.")
@click.pass_context
def render(ctx, points_file, mode, beta, segments, out_path):
    """Deterministic SVG of projected points and two-generator spans."""
    pts = [parse_vector(ln) for ln in _read(points_file).splitlines()
           if ln.strip() and not ln.strip().startswith("#")]
    pairs = []
    for tok in (t for t in segments.split(",") if t):
        try:
            i, j = (int(s) for s in tok.split("-"))
            pairs.append((i, j))
        except ValueError:
            raise click.UsageError(f"bad segment {tok!r}") from None
        if not (0 <= i < len(pts) and 0 <= j < len(pts)):
            raise click.UsageError(f"segment {tok!r} out of range")
    spec = viz.RenderSpec(mode=mode, beta=beta)
    svg = viz.render(pts, pairs, spec)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(svg)
        _emit(ctx, f"wrote {out_path}",
              {"svg": out_path, "points": len(pts), "segments": len(pairs)})
    else:
        click.echo(svg, nl=False)


def main(argv=None):
    try:
        cli(args=argv, standalone_mode=False, obj={})
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(EXIT_USAGE)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except (dynamics.DetectionFailed, BudgetExceeded) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_EXHAUSTED)
    except (TropilinearError, teg.TegError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    sys.exit(0)


if __name__ == "__main__":
    main()
