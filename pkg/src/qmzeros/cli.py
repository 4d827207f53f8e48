"""Command-line front end: qmzeros expand | count | formula | spectrum | curves | verify | threshold."""
import json
import math
import sys
from dataclasses import replace
from fractions import Fraction

import click

from .boundary import CommonZeroError, NotIrreducibleError, arc_zeros, line_zeros, spectrum
from .config import load_defaults
from .counting import (ContourConfig, count_zeros, count_zeros_gamma02, gamma02_for, lambda_of,
                       parse_lambda)
from .equivariant import find_threshold, sample_curves
from .evaluate import EvalConfig
from .expressions import FormParseError, parse_form, parse_linear_family
from .formulas import CLASSES, LambdaClass, n_crit, n_depth1, n_infinity_depth1
from .rings import factor_form, modular, serre_theta
from .verify import SUITES, run_suite


class Settings:
    def __init__(self, config_path=None):
        raw = load_defaults(config_path)
        c = raw.get("contour", {})
        e = raw.get("eval", {})
        self.contour = ContourConfig(**{k: v for k, v in c.items() if k in ContourConfig.__dataclass_fields__})
        self.eval = EvalConfig(**{k: v for k, v in e.items() if k in EvalConfig.__dataclass_fields__})
        self.order = raw.get("series", {}).get("order")

    def apply(self, order=None, height=None, indent=None):
        if order is not None:
            self.order = order
        if height is not None:
            self.contour = replace(self.contour, top_height=height)
        if indent is not None:
            self.contour = replace(self.contour, indent_radius=indent)
        return self


def _emit(data):
    click.echo(json.dumps(data, indent=2))


def _form(text, settings):
    try:
        return parse_form(text, settings.order)
    except FormParseError as exc:
        raise click.BadParameter(str(exc), param_hint="FORM")


def _gamma(text):
    try:
        g = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise click.BadParameter("expected four integers a,b,c,d", param_hint="--gamma")
    if len(g) != 4:
        raise click.BadParameter("expected four integers a,b,c,d", param_hint="--gamma")
    return g


def _settings(ctx, order, height, indent, config_path=None):
    return Settings(config_path or ctx.obj.get("config")).apply(order, height, indent)


common = [
    click.option("--order", type=int, default=None, help="q-series truncation order"),
    click.option("--height", type=float, default=None, help="height of the contour top"),
    click.option("--indent", type=float, default=None, help="maximal indentation radius"),
    click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
                 help="JSON file overriding the default numerical parameters"),
]


def with_common(fn):
    for opt in reversed(common):
        fn = opt(fn)
    return fn


@click.group()
@click.option("--config", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON file overriding the default numerical parameters")
@click.pass_context
def cli(ctx, config):
    """Zero counting for quasimodular forms."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = config


@cli.command("expand")
@click.argument("form")
@with_common
@click.pass_context
def cmd_expand(ctx, form, order, height, indent, config_path):
    """Exact q-expansion of FORM."""
    s = _settings(ctx, order, height, indent, config_path)
    f = _form(form, s)
    _emit({"form": form, "weight": f.weight, "depth": f.depth, "order": f.order,
           "coefficients": [str(c) for c in f.expansion.coeffs],
           "components": [[str(c) for c in comp.coeffs] for comp in f.components]})


def _crit_source(f):
    """g when f = D(g) for a modular g, else None."""
    if f.depth != 1 or f.weight < 4:
        return None
    k = f.weight - 2
    g = modular(k, f.components[1] * Fraction(12, k))
    if serre_theta(g).components[0] == f.components[0]:
        return g
    return None


def _formula_value(f, lam):
    """(name, value) of the closed formula that applies to f at lam, or None."""
    cls = LambdaClass.of(lam)
    if f.depth == 0:
        return "valence", Fraction(f.weight, 12)
    g = _crit_source(f)
    if g is not None:
        return "n_crit", n_crit(g, cls)
    if f.depth == 1:
        try:
            return "n_depth1", Fraction(n_depth1(f, cls))
        except (NotIrreducibleError, CommonZeroError):
            return None
    return None


@cli.command("count")
@click.argument("form")
@click.option("--lambda", "lam", default="inf", show_default=True, help="lambda = -d/c as inf, p/q or a decimal")
@click.option("--formula", is_flag=True, help="also evaluate the applicable closed formula")
@click.option("--gamma02", is_flag=True, help="count in gamma F_0(2) for gamma in Gamma_0(2)")
@click.option("--gamma", default=None, help="a,b,c,d for --gamma02 (default: chosen from --lambda)")
@with_common
@click.pass_context
def cmd_count(ctx, form, lam, formula, gamma02, gamma, order, height, indent, config_path):
    """Weighted number of zeros of FORM in a translate of the fundamental domain."""
    s = _settings(ctx, order, height, indent, config_path)
    f = _form(form, s)
    lam = parse_lambda(lam)
    if gamma02:
        g = _gamma(gamma) if gamma else gamma02_for(lam)
        n = count_zeros_gamma02(f, g, s.contour, s.eval)
        _emit({"form": form, "gamma": list(g), "n_value": str(n), "method": "argument-principle-gamma0(2)"})
        return
    if gamma:
        lam = lambda_of(_gamma(gamma))
    rep = count_zeros(f, lam, s.contour, s.eval)
    out = {"form": form, **rep.to_json()}
    ok = True
    if formula:
        try:
            fv = _formula_value(f, lam)
        except ValueError as exc:
            fv, out["formula_error"] = None, str(exc)
        if fv is None:
            out["formula"] = None
        else:
            out["formula"] = {"name": fv[0], "value": str(fv[1])}
            ok = fv[1] == rep.n_value
        out["agreement"] = ok if fv is not None else None
    _emit(out)
    if not ok:
        sys.exit(1)


@cli.command("formula")
@click.argument("form")
@click.option("--lambda", "lam", default=None, help="a lambda or a class (outer, mid, inner); default all classes")
@with_common
@click.pass_context
def cmd_formula(ctx, form, lam, order, height, indent, config_path):
    """Closed-form zero counts for FORM."""
    s = _settings(ctx, order, height, indent, config_path)
    f = _form(form, s)
    classes = [LambdaClass.of(lam)] if lam is not None else [LambdaClass(c) for c in CLASSES]
    out = {"form": form, "weight": f.weight, "depth": f.depth, "counts": {}}
    for cls in classes:
        fv = _formula_value(f, cls)
        out["counts"][cls.label] = None if fv is None else {"name": fv[0], "value": str(fv[1])}
    if f.depth == 1:
        try:
            out["n_infinity_from_full_arc"] = str(n_infinity_depth1(f))
        except (NotIrreducibleError, CommonZeroError):
            pass
    _emit(out)


@cli.command("spectrum")
@click.argument("form")
@with_common
@click.pass_context
def cmd_spectrum(ctx, form, order, height, indent, config_path):
    """Boundary zeros and signs: the data the closed formulas consume."""
    s = _settings(ctx, order, height, indent, config_path)
    f = _form(form, s)
    if f.depth == 1:
        _emit({"form": form, **spectrum(f, s.eval).to_json()})
        return
    if f.depth != 0:
        raise click.UsageError("spectrum is defined for depth 0 and depth 1")
    fac = factor_form(f)
    _emit({"form": form, "weight": f.weight,
           "arc_zeros": [{"theta": th, "weight": str(w), "multiplicity": m} for th, w, m in arc_zeros(f, s.eval)],
           "line_zeros": [[z.real, z.imag] for z in line_zeros(f, s.eval)],
           "rho_order": fac.rho_order, "i_order": fac.i_order, "cusp_order": fac.cusp_order,
           "j_polynomial": [str(c) for c in fac.poly]})


def _grid(text):
    try:
        nx, ny = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise click.BadParameter("expected NXxNY, e.g. 400x400", param_hint="--grid")
    return nx, ny


@cli.command("curves")
@click.argument("form")
@click.option("--grid", default="200x200", show_default=True, help="grid resolution NXxNY")
@click.option("--top", type=float, default=2.5, show_default=True, help="upper edge of the sampled box")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), required=True, help="CSV output path")
@with_common
@click.pass_context
def cmd_curves(ctx, form, grid, top, out, order, height, indent, config_path):
    """Sample the level set Im h = 0 over the fundamental domain and write CSV."""
    s = _settings(ctx, order, height, indent, config_path)
    f = _form(form, s)
    nx, ny = _grid(grid)
    try:
        sample = sample_curves(f, nx, ny, top, s.eval)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    sample.write_csv(out)
    _emit({"form": form, "out": out, "points": len(sample.points), "branches": sample.branch_count,
           "pole_cells": int(sample.poles.sum())})


@cli.command("verify")
@click.argument("suite", type=click.Choice(list(SUITES) + ["all"]))
def cmd_verify(suite):
    """Run a named acceptance suite; exit status 1 on any mismatch."""
    names = list(SUITES) if suite == "all" else [suite]
    results = [run_suite(n) for n in names]
    _emit([r.to_json() for r in results])
    if not all(r.passed for r in results):
        sys.exit(1)


@cli.command("threshold")
@click.argument("form")
@click.option("--selector", type=click.Choice(["arc-outer", "arc-inner", "hat-sign"]), default="arc-outer",
              show_default=True)
@click.option("--bracket", default=None, help="lo,hi for the parameter t (hat-sign)")
@click.option("--theta", type=float, default=math.pi / 2, show_default=True, help="angle for hat-sign")
@with_common
@click.pass_context
def cmd_threshold(ctx, form, selector, bracket, theta, order, height, indent, config_path):
    """Scalar where the zero count changes: a real crossing of h on the arc, or a parameter value.

    For hat-sign, FORM is linear in the parameter t, for example "E4 - t*E2^2".
    """
    s = _settings(ctx, order, height, indent, config_path)
    if selector == "hat-sign":
        if bracket is None:
            raise click.UsageError("--bracket is required for hat-sign")
        try:
            lo, hi = (float(x) for x in bracket.split(","))
            source = parse_linear_family(form, s.order)
        except FormParseError as exc:
            raise click.BadParameter(str(exc), param_hint="FORM")
        except ValueError:
            raise click.BadParameter("expected lo,hi", param_hint="--bracket")
        value = find_threshold(source, selector, bracket=(lo, hi), theta=theta, cfg=s.eval)
    else:
        value = find_threshold(_form(form, s), selector, cfg=s.eval)
    _emit({"form": form, "selector": selector, "value": value})


def main(argv=None):
    try:
        cli.main(args=argv, prog_name="qmzeros", standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(exc.exit_code)
    except click.exceptions.Abort:
        sys.exit(1)
    except (ValueError, ArithmeticError) as exc:
        click.echo(json.dumps({"error": type(exc).__name__, "message": str(exc)}), err=True)
        sys.exit(2)
    sys.exit(0)


if __name__ == "__main__":
    main()
