"""Independent checks on actual curves.

Random curves with rational points, exact Taylor jets of the implicit branch
through that point, and the end-to-end vanishing/discrimination harness.
Jets are computed with plain truncated power series of Fractions, never with
the Λ-series machinery they are used to test.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from planecurve.curveode import (
    DEFAULT_CAP,
    CurveOde,
    build_full_matrix,
    build_sylvester_matrix,
    curve_ode,
    evaluate_determinant,
)
from planecurve.poly import format_fraction, x_letter
from planecurve.symfunc import add_letter, series_of_alphabet, series_power


class ResamplingExhausted(RuntimeError):
    pass


class JetTooShort(ValueError):
    pass


@dataclass(frozen=True)
class CurveInstance:
    """``u(x, y) = Σ c_{ij} x^i y^j`` with a smooth rational point on it."""

    n: int
    coefficients: dict
    base_point: tuple

    def __post_init__(self):
        coeffs = {(int(i), int(j)): Fraction(c) for (i, j), c in self.coefficients.items() if c}
        if any(i < 0 or j < 0 or i + j > self.n for i, j in coeffs):
            raise ValueError(f"monomial outside total degree {self.n}")
        object.__setattr__(self, "coefficients", coeffs)
        x0, y0 = (Fraction(t) for t in self.base_point)
        object.__setattr__(self, "base_point", (x0, y0))
        if self.u(x0, y0) != 0:
            raise ValueError("base point is not on the curve")
        if self.u_y(x0, y0) == 0:
            raise ValueError("curve is singular or vertical at the base point")

    @property
    def is_monic(self) -> bool:
        return self.coefficients.get((0, self.n)) == 1

    def u(self, x, y) -> Fraction:
        return sum((c * x ** i * y ** j for (i, j), c in self.coefficients.items()), Fraction(0))

    def u_y(self, x, y) -> Fraction:
        return sum(
            (c * j * x ** i * y ** (j - 1) for (i, j), c in self.coefficients.items() if j),
            Fraction(0),
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coefficients": [[i, j, format_fraction(c)]
                             for (i, j), c in sorted(self.coefficients.items())],
            "base_point": [format_fraction(t) for t in self.base_point],
        }


@dataclass(frozen=True)
class DerivativeJet:
    """Exact derivatives ``[y, y', …, y^(order)]`` at the base point."""

    values: tuple

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def taylor(self, i: int) -> Fraction:
        """Normalized derivative D^i y = y^(i) / i!."""
        return self.values[i] / factorial(i)

    def assignment(self, alphabet: str = "A") -> dict:
        a = {("A", i): self.taylor(i) for i in range(self.order + 1)}
        if alphabet == "A":
            return a
        d = {("D", i): a[("A", i + 2)] for i in range(self.order - 1)}
        if alphabet == "D":
            return d
        if alphabet == "E":
            return {("E", i): d[("D", i)] / factorial(i) for i in range(self.order - 1)}
        raise ValueError(alphabet)


# -- truncated univariate series over Q --------------------------------------

def _series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a):
        if ai:
            for j in range(order + 1 - i):
                out[i + j] += ai * b[j]
    return out


def _series_powers(s, top, order):
    pows = [[Fraction(1)] + [Fraction(0)] * order]
    for _ in range(top):
        pows.append(_series_mul(pows[-1], s, order))
    return pows


def _compose(c: CurveInstance, ys, order):
    x0 = c.base_point[0]
    xs = [x0, Fraction(1)] + [Fraction(0)] * (order - 1)
    xp = _series_powers(xs[: order + 1], c.n, order)
    yp = _series_powers(ys, c.n, order)
    total = [Fraction(0)] * (order + 1)
    for (i, j), coeff in c.coefficients.items():
        term = _series_mul(xp[i], yp[j], order)
        for k in range(order + 1):
            total[k] += coeff * term[k]
    return total


def implicit_jet(c: CurveInstance, order: int) -> DerivativeJet:
    """Derivatives of the branch y(x) through the base point, up to ``order``.

    Order by order: with the unknown Taylor coefficient set to zero, the t^k
    coefficient of u(x0 + t, y(t)) is r_k, and the true coefficient is
    -r_k / u_y(x0, y0).
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    x0, y0 = c.base_point
    uy = c.u_y(x0, y0)
    ys = [y0] + [Fraction(0)] * order
    for k in range(1, order + 1):
        residual = _compose(c, ys[: k + 1] + [Fraction(0)] * (order - k), k)[k]
        ys[k] = -residual / uy
    return DerivativeJet(tuple(a * factorial(k) for k, a in enumerate(ys)))


def random_curve(n: int, seed, coeff_bound: int = 5, max_attempts: int = 200) -> CurveInstance:
    """Random monic degree-``n`` curve through a random rational point."""
    if n < 1 or coeff_bound < 1:
        raise ValueError("need n >= 1 and coeff_bound >= 1")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        coeffs = {
            (i, j): Fraction(rng.randint(-coeff_bound, coeff_bound))
            for i in range(n + 1) for j in range(n + 1 - i)
        }
        coeffs[(0, n)] = Fraction(1)
        x0 = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        y0 = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        coeffs[(0, 0)] = Fraction(0)
        coeffs[(0, 0)] = -sum(
            (c * x0 ** i * y0 ** j for (i, j), c in coeffs.items()), Fraction(0)
        )
        try:
            return CurveInstance(n, coeffs, (x0, y0))
        except ValueError:
            continue
    raise ResamplingExhausted(f"no smooth point found for seed {seed!r} after {max_attempts} attempts")


def check_vanishing(ode: CurveOde, jet: DerivativeJet) -> Fraction:
    need = ode.max_derivative_order()
    if jet.order < need:
        raise JetTooShort(f"jet of order {jet.order} but the equation uses y^({need})")
    return ode.poly.evaluate(jet.assignment(ode.alphabet))


# -- Leibnitz lemma -----------------------------------------------------------

def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _normalized_derivative(p, n, x0):
    # D^n p(x0) = Σ_i C(i, n) c_i x0^{i-n}
    return sum((Fraction(c) * comb(i, n) * x0 ** (i - n) for i, c in enumerate(p) if i >= n),
               Fraction(0))


def leibnitz_check(n: int, k: int, r: int, y_poly, x0) -> bool:
    """Compare D^n(x^r y^k) at x0 computed directly and via Λ^n(kA + r/x).

    ``y_poly`` lists the coefficients of y(x) in increasing degree.
    """
    x0 = Fraction(x0)
    if r > 0 and x0 == 0:
        raise ValueError("x0 must be nonzero when r > 0")
    if n < 0 or k < 1 or r < 0:
        raise ValueError("need n >= 0, k >= 1, r >= 0")
    y_poly = [Fraction(c) for c in y_poly] or [Fraction(0)]

    prod = [Fraction(0)] * r + [Fraction(1)]
    for _ in range(k):
        prod = _poly_mul(prod, y_poly)
    direct = _normalized_derivative(prod, n, x0)

    s = series_power(series_of_alphabet("A", n), k)
    if r > 0:
        s = add_letter(s, r, x_letter(-1))
    rhs = x_letter(r) * s[n]
    assignment = {("A", i): _normalized_derivative(y_poly, i, x0) for i in range(n + 1)}
    assignment[("X", 0)] = x0
    return rhs.evaluate(assignment) == direct


# -- end-to-end harness -------------------------------------------------------

@dataclass
class Report:
    n: int
    mode: str
    trials: int
    seed: int
    passes: int = 0
    discrimination_nonzero: int = 0
    accidental_zeros: int = 0
    failures: list = field(default_factory=list)

    @property
    def accidental_zero_rate(self) -> float:
        attempts = self.discrimination_nonzero + self.accidental_zeros
        return self.accidental_zeros / attempts if attempts else 0.0

    @property
    def ok(self) -> bool:
        return (
            not self.failures
            and self.passes == self.trials
            and self.discrimination_nonzero == self.trials
            and self.accidental_zero_rate < 0.2
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "trials": self.trials,
            "passes": self.passes,
            "discrimination_nonzero": self.discrimination_nonzero,
            "accidental_zeros": self.accidental_zeros,
            "seed": self.seed,
            "failures": self.failures,
        }


def equation_order(n: int) -> int:
    return n * (n + 3) // 2


def _trial_seed(seed: int, n: int, kind: str, trial: int, attempt: int = 0) -> str:
    return f"{seed}:{n}:{kind}:{trial}:{attempt}"


def numeric_values(n: int, jet: DerivativeJet) -> list:
    """Determinants on a jet: full matrix with the true y, y'; full matrix
    with y = y' = 0; Sylvester matrix."""
    full = build_full_matrix(n)
    syl = build_sylvester_matrix(n)
    true_a = jet.assignment("A")
    zeroed = dict(true_a)
    zeroed[("A", 0)] = zeroed[("A", 1)] = Fraction(0)
    return [
        evaluate_determinant(full, true_a),
        evaluate_determinant(full, zeroed),
        evaluate_determinant(syl, jet.assignment("D")),
    ]


def verify_degree(n: int, trials: int, seed: int = 0, mode: str = "symbolic",
                  cap: int = DEFAULT_CAP, max_resamples: int = 10) -> Report:
    """Check the degree-n equation on random degree-n and degree-(n+1) curves."""
    if mode not in ("symbolic", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    if trials < 1:
        raise ValueError("trials must be positive")
    ode = curve_ode(n, "D", cap) if mode == "symbolic" else None
    order = equation_order(n)

    def values(jet):
        if ode is not None:
            return [check_vanishing(ode, jet)]
        return numeric_values(n, jet)

    report = Report(n=n, mode=mode, trials=trials, seed=seed)
    for t in range(trials):
        curve = random_curve(n, _trial_seed(seed, n, "on", t))
        vals = values(implicit_jet(curve, order))
        bad = [v for v in vals if v != 0]
        if bad:
            report.failures.append(
                {"trial": t, "kind": "vanishing", "curve": curve.to_json(),
                 "value": format_fraction(bad[0])}
            )
        else:
            report.passes += 1

        for attempt in range(max_resamples):
            other = random_curve(n + 1, _trial_seed(seed, n, "off", t, attempt))
            vals = values(implicit_jet(other, order))
            if len(set(vals)) > 1:
                report.failures.append(
                    {"trial": t, "kind": "replay", "curve": other.to_json(),
                     "value": format_fraction(vals[0] - vals[-1])}
                )
            if all(v != 0 for v in vals):
                report.discrimination_nonzero += 1
                break
            report.accidental_zeros += 1
        else:
            report.failures.append(
                {"trial": t, "kind": "discrimination", "curve": other.to_json(),
                 "value": "0/1"}
            )
    return report
