"""Text expressions for quasimodular forms.

Generators are E2, E4, E6, E<k> (any even k >= 4), Delta and j, combined with
+, -, *, integer powers (^ or **), rational scalars, D(...) and theta(...).
Presets: "gap:k", "extremal:k" and "Ek':k" (the derivative of E_k).

j = E4^3/Delta is not holomorphic at the cusp, so values are carried as a
form over a power of Delta and the division is done at the end; the
expression must reduce to a genuine form.
"""
import ast
import re
from fractions import Fraction

from .qseries import series_invert
from .rings import (QuasiModularForm, d_form, delta, delta_form, e2_form, eisenstein_form,
                    extremal_form, gap_form, serre_theta)
from .config import default_order


class FormParseError(ValueError):
    def __init__(self, message, position=None):
        self.position = position
        where = f" at column {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


_PRESET = re.compile(r"^\s*(gap|extremal|Ek'|E_k'|Ek)\s*:\s*(\d+)\s*$")
_EISENSTEIN = re.compile(r"^E(\d+)$")


class _Value:
    """form / Delta^den, or a bare rational scalar when form is None."""

    def __init__(self, form=None, den=0, scalar=None):
        self.form, self.den, self.scalar = form, den, scalar

    @property
    def is_scalar(self):
        return self.form is None


def _lift(v, den, order):
    if v.den == den:
        return v.form
    return v.form * delta_form(order) ** (den - v.den)


class _Evaluator:
    def __init__(self, order, params):
        self.order = order
        self.params = params

    def fail(self, node, message):
        raise FormParseError(message, getattr(node, "col_offset", None))

    def generator(self, node, name):
        o = self.order
        if name in self.params:
            return _Value(scalar=Fraction(self.params[name]))
        if name == "E2":
            return _Value(e2_form(o))
        if name == "Delta":
            return _Value(delta_form(o))
        if name == "j":
            return _Value(eisenstein_form(4, o) ** 3, 1)
        m = _EISENSTEIN.match(name)
        if m and int(m.group(1)) >= 4 and int(m.group(1)) % 2 == 0:
            return _Value(eisenstein_form(int(m.group(1)), o))
        self.fail(node, f"unknown name {name!r}")

    def visit(self, node):
        if isinstance(node, ast.Expression):
            return self.visit(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                self.fail(node, "only integer literals are allowed (write p/q for rationals)")
            return _Value(scalar=Fraction(node.value))
        if isinstance(node, ast.Name):
            return self.generator(node, node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self.visit(node.operand)
            if isinstance(node.op, ast.UAdd):
                return v
            return _Value(scalar=-v.scalar) if v.is_scalar else _Value(-v.form, v.den)
        if isinstance(node, ast.BinOp):
            return self.binop(node)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in ("D", "theta"):
            if len(node.args) != 1 or node.keywords:
                self.fail(node, f"{node.func.id} takes one argument")
            v = self.visit(node.args[0])
            if v.is_scalar:
                return _Value(scalar=Fraction(0))
            if v.den:
                self.fail(node, "derivatives of expressions with a pole at the cusp are not supported")
            try:
                return _Value(d_form(v.form) if node.func.id == "D" else serre_theta(v.form))
            except ValueError as exc:
                self.fail(node, str(exc))
        self.fail(node, f"unsupported syntax {type(node).__name__}")

    def binop(self, node):
        a = self.visit(node.left)
        if isinstance(node.op, ast.Pow):
            b = self.visit(node.right)
            if not b.is_scalar or b.scalar.denominator != 1 or b.scalar < 0:
                self.fail(node.right, "exponents must be non-negative integers")
            n = int(b.scalar)
            if a.is_scalar:
                return _Value(scalar=a.scalar ** n)
            return _Value(a.form ** n, a.den * n)
        b = self.visit(node.right)
        if isinstance(node.op, ast.Div):
            if not b.is_scalar:
                self.fail(node.right, "division is only by rational scalars")
            if b.scalar == 0:
                self.fail(node.right, "division by zero")
            if a.is_scalar:
                return _Value(scalar=a.scalar / b.scalar)
            return _Value(a.form * (1 / b.scalar), a.den)
        if isinstance(node.op, ast.Mult):
            if a.is_scalar and b.is_scalar:
                return _Value(scalar=a.scalar * b.scalar)
            if a.is_scalar or b.is_scalar:
                s, v = (a, b) if a.is_scalar else (b, a)
                return _Value(v.form * s.scalar, v.den)
            return _Value(a.form * b.form, a.den + b.den)
        if isinstance(node.op, (ast.Add, ast.Sub)):
            sign = 1 if isinstance(node.op, ast.Add) else -1
            if a.is_scalar and b.is_scalar:
                return _Value(scalar=a.scalar + sign * b.scalar)
            if a.is_scalar or b.is_scalar:
                s, v = (a, b) if a.is_scalar else (b, a)
                if s.scalar == 0:
                    return v if v is a or sign == 1 else _Value(-v.form, v.den)
                if v.form.weight != 12 * v.den:
                    self.fail(node, "cannot add a nonzero scalar to a form of positive weight")
                # weight 0: the scalar is s * Delta^den / Delta^den
                lifted = _Value(delta_form(self.order) ** v.den * s.scalar, v.den)
                a, b = (lifted, b) if a.is_scalar else (a, lifted)
            den = max(a.den, b.den)
            fa, fb = _lift(a, den, self.order), _lift(b, den, self.order)
            try:
                return _Value(fa + fb * sign, den)
            except ValueError as exc:
                self.fail(node, str(exc))
        self.fail(node, f"unsupported operator {type(node.op).__name__}")


def _divide_delta(form, n):
    if n == 0:
        return form
    inv = series_invert(delta(form.order).shift_down(1)) ** n
    comps = []
    for c in form.components:
        v = c.valuation()
        if v is not None and v < n:
            raise FormParseError("the expression has a pole at the cusp")
        comps.append(c.shift_down(n) * inv)
    return QuasiModularForm(form.weight - 12 * n, comps)


def _preset(kind, k, order):
    try:
        return _build_preset(kind, k, order)
    except FormParseError:
        raise
    except ValueError as exc:
        raise FormParseError(str(exc)) from None


def _build_preset(kind, k, order):
    if kind == "gap":
        return gap_form(k, order)
    if kind == "extremal":
        return extremal_form(k, order)
    if k < 4 or k % 2:
        raise FormParseError("Ek':k needs an even k >= 4")
    return d_form(eisenstein_form(k, order))


def parse_form(text, order=None, params=None):
    """The form denoted by text, exact to q^order."""
    m = _PRESET.match(text)
    if m:
        k = int(m.group(2))
        order = order if order is not None else default_order(k)
        return _preset("Ek" if m.group(1).startswith("E") else m.group(1), k, order)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise FormParseError(f"syntax error: {exc.msg}", exc.offset) from None
    params = params or {}
    # a cheap pass finds how many orders the final division by Delta costs
    probe = _Evaluator(4, params).visit(tree)
    if probe.is_scalar:
        raise FormParseError("the expression is a scalar, not a form")
    if order is None:
        order = default_order(probe.form.weight - 12 * probe.den)
    value = _Evaluator(order + probe.den, params).visit(tree)
    form = _divide_delta(value.form, value.den)
    return form.truncate(order) if form.order > order else form


def parse_linear_family(text, order=None, name="t"):
    """(base, direction) with text = base + name * direction; raises unless linear in name."""
    at = [parse_form(text, order, {name: v}) for v in (0, 1, 2)]
    base, direction = at[0], at[1] - at[0]
    if at[2] - base != direction * 2:
        raise FormParseError(f"the expression is not linear in {name}")
    return base, direction
