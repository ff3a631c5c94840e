"""Elimination determinants for plane curves of degree n and their expansion.

The curve ``u = y^n + Σ c_{rk} x^r y^k`` differentiated ``n+1 .. n(n+3)/2``
times gives a square linear system in the unknown coefficients.  Its columns
are indexed by ``(m, s)``: block ``m = 1..n`` (the power of y), shift
``s = n-m .. 0``.  The entry in row ``j`` is ``Λ^{n+1+j-s}(m A)``; in the
Sylvester form, with ``Λ^0 A = Λ^1 A = 0``, it becomes ``Λ^{n+1+j-s-2m}(m D)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from planecurve.invariants import NotInPsiSubring, dehomogenize, to_psi
from planecurve.poly import Lam, MissingVariable, MultiPoly
from planecurve.symfunc import lambda_of_multiple, reexpress

DEFAULT_CAP = 6
BASES = ("A", "D", "E", "psi", "derivative")


class SymbolicCapExceeded(RuntimeError):
    def __init__(self, side: int, cap: int):
        super().__init__(
            f"symbolic expansion refused for a {side}x{side} determinant "
            f"(cap {cap}); use numeric evaluation"
        )
        self.side = side
        self.cap = cap


def side_for_degree(n: int) -> int:
    return n * (n + 1) // 2


def matrix_columns(n: int) -> list:
    return [(m, s) for m in range(1, n + 1) for s in range(n - m, -1, -1)]


class PolyMatrix:
    """Square elimination matrix with lazily built polynomial entries."""

    def __init__(self, n: int, basis: str):
        if n < 2:
            raise ValueError("curve degree must be at least 2")
        if basis not in ("FullA", "SylvesterD"):
            raise ValueError(f"unknown matrix basis {basis!r}")
        self.n = n
        self.basis = basis
        self.columns = matrix_columns(n)
        self._entries = None

    @property
    def side(self) -> int:
        return len(self.columns)

    @property
    def alphabet(self) -> str:
        return "A" if self.basis == "FullA" else "D"

    def superscript(self, j: int, col: int) -> int:
        m, s = self.columns[col]
        i = self.n + 1 + j - s
        return i if self.basis == "FullA" else i - 2 * m

    @property
    def max_superscript(self) -> int:
        return max(self.superscript(self.side - 1, c) for c in range(self.side))

    def multiple(self, col: int) -> int:
        return self.columns[col][0]

    def entry(self, j: int, col: int) -> MultiPoly:
        return lambda_of_multiple(
            self.alphabet, self.multiple(col), self.superscript(j, col), self.max_superscript
        )

    @property
    def entries(self) -> tuple:
        if self._entries is None:
            self._entries = tuple(
                tuple(self.entry(j, c) for c in range(self.side)) for j in range(self.side)
            )
        return self._entries

    def required_variables(self) -> list:
        return [(self.alphabet, i) for i in range(self.max_superscript + 1)]

    def evaluate(self, assignment) -> list:
        """Rational matrix obtained by evaluating every entry.

        Works numerically on the Λ-series, so it never materializes the
        symbolic entries.
        """
        try:
            base = [Fraction(assignment[v]) for v in self.required_variables()]
        except KeyError as exc:
            raise MissingVariable(exc.args[0]) from None
        powers = {1: base}
        for m in range(2, self.n + 1):
            prev = powers[m - 1]
            powers[m] = [
                sum(prev[t] * base[i - t] for t in range(i + 1)) for i in range(len(base))
            ]
        rows = []
        for j in range(self.side):
            row = []
            for c in range(self.side):
                i = self.superscript(j, c)
                row.append(powers[self.multiple(c)][i] if i >= 0 else Fraction(0))
            rows.append(row)
        return rows

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "basis": self.basis,
            "side": self.side,
            "entries": [p.to_json() for row in self.entries for p in row],
        }

    def labels(self) -> list:
        """Human-readable entry labels such as ``Λ^3(2A)``."""
        alpha = self.alphabet
        out = []
        for j in range(self.side):
            row = []
            for c in range(self.side):
                i, m = self.superscript(j, c), self.multiple(c)
                row.append(f"L^{i}({m}{alpha})" if m > 1 else f"L^{i}({alpha})")
            out.append(row)
        return out


def build_full_matrix(n: int) -> PolyMatrix:
    return PolyMatrix(n, "FullA")


def build_sylvester_matrix(n: int) -> PolyMatrix:
    return PolyMatrix(n, "SylvesterD")


def expand_determinant(M, cap: int = DEFAULT_CAP) -> MultiPoly:
    """Exact symbolic determinant by cofactor expansion with cached minors.

    ``M`` is a PolyMatrix or a square list of MultiPoly rows.  Minors are built
    row by row over column subsets, so each of the 2^q minors is computed once.
    """
    rows = M.entries if isinstance(M, PolyMatrix) else M
    q = len(rows)
    if any(len(r) != q for r in rows):
        raise ValueError("matrix must be square")
    if q > cap:
        raise SymbolicCapExceeded(q, cap)
    if q == 0:
        return MultiPoly.const(1)
    # minors[mask] = det of rows 0..popcount-1 restricted to the columns in mask
    minors = {0: MultiPoly.const(1)}
    for k in range(q):
        row = rows[k]
        nxt = {}
        for mask, minor in minors.items():
            if minor.is_zero():
                continue
            # the new row's column c enters at position = count of chosen cols after c
            for c in range(q):
                if mask >> c & 1 or row[c].is_zero():
                    continue
                after = bin(mask >> (c + 1)).count("1")
                term = row[c] * minor
                if after % 2:
                    term = -term
                key = mask | (1 << c)
                nxt[key] = nxt[key] + term if key in nxt else term
        minors = nxt
    return minors.get((1 << q) - 1, MultiPoly())


def bareiss_determinant(rows) -> Fraction:
    """Fraction-free (Bareiss) elimination on an exact rational matrix."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    if n == 0:
        return Fraction(1)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / prev
            a[i][k] = Fraction(0)
        prev = pivot
    return sign * a[n - 1][n - 1]


def evaluate_determinant(M, assignment) -> Fraction:
    if isinstance(M, PolyMatrix):
        return bareiss_determinant(M.evaluate(assignment))
    return bareiss_determinant([[p.evaluate(assignment) for p in r] for r in M])


@lru_cache(maxsize=None)
def sylvester_determinant(n: int, cap: int = DEFAULT_CAP) -> MultiPoly:
    return expand_determinant(build_sylvester_matrix(n), cap)


# -- the normalized equation -----------------------------------------------

@dataclass(frozen=True)
class CurveOde:
    n: int
    basis: str
    poly: MultiPoly
    degree: int
    weight: int
    psi: object = field(default=None, compare=False)

    @property
    def alphabet(self) -> str:
        return {"A": "A", "derivative": "A", "D": "D", "E": "E", "psi": "E"}[self.basis]

    def max_derivative_order(self) -> int:
        shift = 0 if self.alphabet == "A" else 2
        return max((v[1] + shift for v in self.poly.variables()), default=0)


def _sylvester_equation(n: int, cap: int) -> MultiPoly:
    det = sylvester_determinant(n, cap)
    if n == 2:
        det = det.exact_div(Lam("D", 0))
    return det.primitive()


def curve_ode(n: int, basis: str = "D", cap: int = DEFAULT_CAP) -> CurveOde:
    """The differential equation of a generic plane curve of degree ``n``.

    Expands the Sylvester determinant, drops the conic's spurious Λ^0 D
    factor, fixes content and sign, then rewrites in the requested basis.
    """
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}")
    if n < 2:
        raise ValueError("curve degree must be at least 2")
    side = side_for_degree(n)
    if side > cap:
        raise SymbolicCapExceeded(side, cap)
    poly = _sylvester_equation(n, cap)
    psi = None
    if basis in ("A", "derivative"):
        poly = reexpress(poly, "D", "A").primitive()
    elif basis in ("E", "psi"):
        poly = reexpress(poly, "D", "E").primitive()
    if basis == "psi":
        psi = to_psi(dehomogenize(poly, "E"), "E").primitive()
    if not (poly.is_homogeneous() and poly.is_isobaric()):
        raise AssertionError("emitted equation is not homogeneous and isobaric")
    return CurveOde(n, basis, poly, poly.degree(), poly.weight(), psi)


def derivative_factorial(alphabet: str, index: int) -> tuple:
    """(derivative order k, divisor) such that the variable equals y^(k)/divisor."""
    if alphabet == "A":
        return index, factorial(index)
    if alphabet == "D":
        return index + 2, factorial(index + 2)
    if alphabet == "E":
        return index + 2, factorial(index) * factorial(index + 2)
    raise ValueError(alphabet)
