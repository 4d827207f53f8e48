"""Named verification suites shared by the command line and the test suite.

Each suite returns a SuiteResult holding individual checks; a suite passes
when every check does.
"""
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .boundary import arc_zeros, cgl, spectrum
from .counting import count_zeros, count_zeros_gamma02
from .equivariant import (HFamily, derivative_identity, e2_square_threshold, find_threshold, h_depth1,
                          product_law, root_set_distance)
from .formulas import (CLASSES, LambdaClass, chebyshev_counts, known_tables, n_crit, n_depth1,
                       n_depth1_all, pair_sum, scan_e2_power)
from .rings import (d_form, delta_form, e2_form, e4_form, e6_form, eisenstein_form, extremal_form,
                    factor_form, frak_d, gap_form, is_irreducible_depth1, kaneko_zagier_residual, modular,
                    modular_monomial, weight_op)

GAP_A7_A9 = (212963830173619200, 45122255555990230800, 3920264199663225523200)
GAP_F1_J_ROOTS = (198.3495, 1082.4083)
GAP_F0_J_ROOTS = (-36.7451, 482.1402, 1526.3776)
THRESHOLD_V = 5.555295
THRESHOLD_INV_V = 0.180008
THRESHOLD_T1 = 1.596
REPRESENTATIVE_LAMBDAS = {c: LambdaClass(c).representative() for c in CLASSES}


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, label, passed, detail=""):
        self.checks.append(Check(label, bool(passed), detail))

    def to_json(self):
        return {"suite": self.name, "passed": self.passed, "seconds": round(self.seconds, 3),
                "checks": [{"label": c.label, "passed": c.passed, "detail": c.detail} for c in self.checks]}


def _rng(seed):
    return np.random.default_rng(seed)


def _nonzero_ints(rng, n, bound=5):
    while True:
        v = [int(x) for x in rng.integers(-bound, bound + 1, size=n)]
        if any(v):
            return v


def random_modular(rng, k, order=None):
    order = order if order is not None else 2 * k + 16
    exps = [(a, b) for a in range(k // 4 + 1) for b in range(k // 6 + 1) if 4 * a + 6 * b == k]
    if not exps:
        raise ValueError(f"no nonzero modular forms of weight {k}")
    coeffs = _nonzero_ints(rng, len(exps))
    total = None
    for (a, b), c in zip(exps, coeffs):
        term = modular_monomial(a, b, order) * c
        total = term if total is None else total + term
    return modular(k, total)


def random_depth1(rng, k, order=None):
    """f0 + f1 E2 with random small integer coordinates; None if reducible."""
    order = order if order is not None else 2 * k + 16
    f1 = random_modular(rng, k - 2, order)
    f0 = random_modular(rng, k, order) if k != 2 else None
    f = f1 * e2_form(order)
    if f0 is not None:
        f = f0 + f
    try:
        if not is_irreducible_depth1(f):
            return None
        spectrum(f)
    except ValueError:
        return None
    return f


def depth1_corpus(size=16, seed=7):
    """Irreducible depth-1 forms of weight <= 36 starting with the weight-36 gap form."""
    rng = _rng(seed)
    corpus = [("gap:36", gap_form(36)), ("E2", e2_form(40))]
    weights = [6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30, 32, 34, 36]
    i = 0
    while len(corpus) < size:
        k = weights[i % len(weights)]
        i += 1
        f = random_depth1(rng, k)
        if f is not None:
            corpus.append((f"random-{k}-{i}", f))
    return corpus


def _fmt(x):
    return str(x) if isinstance(x, (Fraction, int)) else repr(x)


def _oracle(f, lam):
    return count_zeros(f, lam).n_value


# suites

def suite_valence():
    res = SuiteResult("valence")
    rng = _rng(11)
    lams = (math.inf, Fraction(0), Fraction(2, 3), Fraction(3))
    for n in range(20):
        k = int(rng.choice([w for w in range(4, 50, 2) if w != 2]))
        g = random_modular(rng, k)
        for lam in lams:
            got = _oracle(g, lam)
            res.add(f"form {n} weight {k} lambda {_fmt(lam)}", got == Fraction(k, 12),
                    f"{got} vs {Fraction(k, 12)}")
    return res


def suite_e2():
    res = SuiteResult("e2")
    e2 = e2_form(40)
    expected = {"outer": 0, "mid": 0, "inner": 1}
    for c in CLASSES:
        res.add(f"n_depth1 {c}", n_depth1(e2, c) == expected[c])
    for lam in (math.inf, Fraction(3), Fraction(3, 4), Fraction(1, 5), Fraction(0)):
        c = LambdaClass.of(lam).tag
        got = _oracle(e2, lam)
        res.add(f"oracle lambda {_fmt(lam)}", got == expected[c], f"{got}")
    return res


def suite_dek():
    res = SuiteResult("dek")
    for k in range(4, 17, 2):
        ek = eisenstein_form(k, 2 * k + 30)
        f = d_form(ek)
        for c in CLASSES:
            got = _oracle(f, REPRESENTATIVE_LAMBDAS[c])
            want = known_tables("DEk", k, c)
            crit = n_crit(ek, c)
            res.add(f"D(E{k}) {c}", got == want == crit, f"oracle {got}, table {want}, n_crit {crit}")
    return res


def crit_forms(seed=3):
    rng = _rng(seed)
    o = 90
    d, e4, e6 = delta_form(o), e4_form(o), e6_form(o)
    forms = [("Delta", d), ("E4", e4), ("E6", e6), ("E4E6", e4 * e6), ("DeltaE4", d * e4), ("Delta^2", d * d)]
    for k in (24, 36):
        forms.append((f"random cusp form {k}", d * random_modular(rng, k - 12, o)))
    return forms


def suite_crit():
    res = SuiteResult("crit")
    for name, g in crit_forms():
        f = d_form(g)
        for c in CLASSES:
            got = _oracle(f, REPRESENTATIVE_LAMBDAS[c])
            want = n_crit(g, c)
            res.add(f"D({name}) {c}", got == want, f"oracle {got}, n_crit {want}")
    return res


def suite_depth1():
    res = SuiteResult("depth1-theorem")
    for name, f in depth1_corpus():
        want = n_depth1_all(f)
        got = tuple(_oracle(f, REPRESENTATIVE_LAMBDAS[c]) for c in CLASSES)
        res.add(f"{name} triple", got == want, f"oracle {got}, formula {want}")
        if name == "gap:36":
            res.add("gap:36 equals (1, 5, 6)", want == (1, 5, 6), f"{want}")
    return res


def suite_gap_coefficients():
    res = SuiteResult("gap-coefficients")
    f = gap_form(36, 12)
    got = tuple(int(f.expansion[n]) for n in (7, 8, 9))
    for n, g, w in zip((7, 8, 9), got, GAP_A7_A9):
        res.add(f"a_{n}", g == w and f.expansion[n].denominator == 1, f"{g}")
    res.add("a_1..a_6 vanish", all(f.expansion[n] == 0 for n in range(1, 7)))
    return res


def suite_j_roots(tol=1e-3):
    res = SuiteResult("j-roots")
    f = gap_form(36)
    f0, f1 = modular(36, f.components[0]), modular(34, f.components[1])
    for label, g, want in (("f1", f1, GAP_F1_J_ROOTS), ("f0", f0, GAP_F0_J_ROOTS)):
        fac = factor_form(g)
        roots = fac.real_roots_between(None, None)
        ok = len(roots) == len(want) and all(abs(a - b) < tol for a, b in zip(roots, want))
        res.add(f"{label} j-roots", ok, f"{[round(r, 4) for r in roots]} (degree {fac.degree})")
    return res


def suite_thresholds(tol=1e-3):
    res = SuiteResult("thresholds")
    o = 60
    f = e2_form(o) ** 2 - e4_form(o)
    v = find_threshold(f, "arc-outer")
    iv = find_threshold(f, "arc-inner")
    res.add("v", abs(v - THRESHOLD_V) < tol, f"{v:.7f}")
    res.add("1/v", abs(iv - THRESHOLD_INV_V) < tol, f"{iv:.7f}")
    res.add("v * (1/v) = 1", abs(v * iv - 1) < 1e-6, f"{v * iv:.9f}")
    t1 = find_threshold((e4_form(o), -(e2_form(o) ** 2)), "hat-sign", bracket=(0.5, 3.0))
    res.add("t1", abs(t1 - THRESHOLD_T1) < tol, f"{t1:.7f}")
    res.add("t1 closed form", abs(t1 - e2_square_threshold()) < 1e-8)
    return res


def suite_higher_depth():
    res = SuiteResult("higher-depth")
    o = 60
    e2, e4 = e2_form(o), e4_form(o)
    f = e2 * e2 - e4
    v = THRESHOLD_V
    for lam in (math.inf, Fraction(6), Fraction(2), Fraction(3, 10), Fraction(1, 10)):
        a = math.inf if lam == math.inf else float(lam)
        want = 1 if (a > v or 1 / v < a < 0.5) else 0
        got = _oracle(f, lam)
        res.add(f"E2^2-E4 lambda {_fmt(lam)}", got == want, f"{got} vs {want}")
    for t in (Fraction(-1), Fraction(1, 2), Fraction(2)):
        ft = e4 - e2 * e2 * t
        got = _oracle(ft, math.inf)
        want_one = 0 < t < THRESHOLD_T1
        res.add(f"f_t t={t}", (got == 1) == want_one, f"{got}")
    return res


def suite_gamma02():
    res = SuiteResult("gamma02")
    o = 60
    f = e2_form(o) ** 2 - e4_form(o)
    for g in ((1, 0, 0, 1), (1, 1, 2, 3), (1, 0, 2, 1)):
        got = count_zeros_gamma02(f, g)
        res.add(f"gamma {g}", got == 1, f"{got}")
    return res


def suite_pair_sum():
    res = SuiteResult("pair-sum")
    for name, f in depth1_corpus():
        sp = spectrum(f)
        for lam in (Fraction(3, 4), Fraction(3, 2), Fraction(3), Fraction(1, 5)):
            got = _oracle(f, lam) + _oracle(f, -1 / lam)
            if Fraction(1, 2) < lam < 2:
                want = Fraction(f.weight // 6)
            else:
                want = pair_sum(f, "outer", sp)
            res.add(f"{name} lambda {lam}", got == want, f"{got} vs {want}")
    return res


def suite_appendix():
    res = SuiteResult("appendix")
    for n in range(1, 21):
        want = chebyshev_counts(n)
        got = scan_e2_power(n)
        res.add(f"E2^{n} sign changes", got == want, f"scan {got}, closed form {want}")
    rng = _rng(19)
    for i in range(5):
        p = int(rng.integers(2, 7))
        o = 4 * p + 40
        f = random_modular(rng, 2 * p, o) + e2_form(o) ** p
        got = _oracle(f, math.inf)
        res.add(f"bound p={p} instance {i}", got <= Fraction(p + 1, 3), f"N = {got}")
    return res


def _random_taus(rng, n):
    out = []
    while len(out) < n:
        z = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.9, 1.6))
        if abs(z) >= 1:
            out.append(z)
    return np.array(out)


def suite_identities():
    res = SuiteResult("identities")
    rng = _rng(23)
    o = 80
    e2, e4, e6, d = e2_form(o), e4_form(o), e6_form(o), delta_form(o)
    f = e2 * e4 + e6 * 2
    taus = _random_taus(rng, 50)
    h = h_depth1(f, taus)
    err_t = float(np.max(np.abs(h_depth1(f, taus + 1) - (h + 1))))
    err_s = float(np.max(np.abs(h_depth1(f, -1 / taus) - (-1 / h))))
    res.add("h(T tau) = T h(tau)", err_t < 1e-8, f"{err_t:.2e}")
    res.add("h(S tau) = S h(tau)", err_s < 1e-8, f"{err_s:.2e}")
    refl = float(np.max(np.abs(h_depth1(f, -taus.conj()) + h.conj())))
    res.add("h(-conj tau) = -conj h(tau)", refl < 1e-8, f"{refl:.2e}")
    th = np.linspace(math.pi / 3 + 1e-3, 2 * math.pi / 3 - 1e-3, 40)
    unit = float(np.max(np.abs(np.abs(h_depth1(f, np.exp(1j * th))) - 1)))
    res.add("|h| = 1 on the unit circle", unit < 1e-9, f"{unit:.2e}")
    line = float(np.max(np.abs(h_depth1(f, -0.5 + 1j * np.linspace(0.9, 2.5, 30)).real + 0.5)))
    res.add("Re h = -1/2 on the left edge", line < 1e-8, f"{line:.2e}")

    lhs, rhs = derivative_identity(f, taus)
    rel = float(np.max(np.abs(lhs - rhs) / np.abs(rhs)))
    res.add("derivative identity", rel < 1e-6, f"{rel:.2e}")

    g = e4 + e2 * e2
    left, right = product_law(g, 2j, 3)
    rel = abs(left - right) / abs(right)
    res.add("product law at 2i, lambda 3", rel < 1e-8, f"{rel:.2e}")

    q = e2 * e2 - e4
    fam = HFamily(q)
    worst_res = worst_t = worst_s = 0.0
    for z in taus[:20]:
        hs = fam(z)
        worst_res = max(worst_res, float(np.max(fam.residuals(z, hs))))
        worst_t = max(worst_t, root_set_distance(fam(z + 1), hs + 1))
        worst_s = max(worst_s, root_set_distance(fam(-1 / z), -1 / hs))
    res.add("depth-2 residuals", worst_res < 1e-9, f"{worst_res:.2e}")
    res.add("depth-2 roots under T", worst_t < 1e-8, f"{worst_t:.2e}")
    res.add("depth-2 roots under S", worst_s < 1e-8, f"{worst_s:.2e}")

    forms = [e2, e4, q, e2 * e4 + e6, e2 ** 3 - e2 * e4 + e6, d_form(d), e2 ** 6 + d]
    for n, x in enumerate(forms):
        ok = (frak_d(d_form(x)) - d_form(frak_d(x)) == weight_op(x)
              and weight_op(d_form(x)) - d_form(weight_op(x)) == d_form(x) * 2
              and weight_op(frak_d(x)) - frak_d(weight_op(x)) == frak_d(x) * (-2))
        res.add(f"sl2 commutators on form {n}", ok)
    return res


def suite_extremal():
    res = SuiteResult("extremal")
    for k in (6, 12, 18):
        f = extremal_form(k, 3 * k + 30)
        resid = kaneko_zagier_residual(f)
        res.add(f"k={k} ODE residual", resid.is_zero())
        got = _oracle(f, math.inf)
        res.add(f"k={k} N_inf", got == k // 6 == n_depth1(f, "outer"), f"{got}")
        f1 = modular(k - 2, f.components[1])
        on_arc = sum((w * m for _, w, m in arc_zeros(f1)), Fraction(0))
        res.add(f"k={k} zeros of f1 on the arc", on_arc == Fraction(k - 2, 12),
                f"{on_arc} of {Fraction(k - 2, 12)}; C = {cgl(f1).C}")
    return res


SUITES = {
    "valence": suite_valence,
    "e2": suite_e2,
    "dek": suite_dek,
    "crit": suite_crit,
    "depth1-theorem": suite_depth1,
    "gap-coefficients": suite_gap_coefficients,
    "j-roots": suite_j_roots,
    "thresholds": suite_thresholds,
    "higher-depth": suite_higher_depth,
    "gamma02": suite_gamma02,
    "pair-sum": suite_pair_sum,
    "appendix": suite_appendix,
    "identities": suite_identities,
    "extremal": suite_extremal,
}


def run_suite(name):
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    start = time.perf_counter()
    res = SUITES[name]()
    res.seconds = time.perf_counter() - start
    return res
