"""λ-ring alphabet calculus on truncated generating series.

An alphabet is known only through its elementary symmetric functions,
collected in the series ``Σ z^i Λ^i``.  Multiples of an alphabet are powers of
the series, adding ``r`` copies of a letter multiplies by ``(1 + z·letter)^r``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from planecurve.poly import Lam, MultiPoly, poly_sum

SERIES_ALPHABETS = ("A", "D", "E")


class AlphabetSeries:
    """``Σ_{i=0}^{N} z^i c_i`` with explicit truncation order ``N``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the z^0 coefficient")
        self.coeffs = coeffs

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> MultiPoly:
        if i < 0:
            return MultiPoly()
        if i > self.truncation:
            raise IndexError(f"coefficient z^{i} is beyond truncation {self.truncation}")
        return self.coeffs[i]

    def __eq__(self, other):
        if not isinstance(other, AlphabetSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __mul__(self, other: "AlphabetSeries") -> "AlphabetSeries":
        # mixed truncations keep the smaller one
        n = min(self.truncation, other.truncation)
        a, b = self.coeffs, other.coeffs
        return AlphabetSeries(
            poly_sum(a[j] * b[i - j] for j in range(i + 1)) for i in range(n + 1)
        )

    def truncate(self, n: int) -> "AlphabetSeries":
        if n > self.truncation:
            raise ValueError("cannot extend a series beyond its truncation")
        return AlphabetSeries(self.coeffs[: n + 1])

    def __repr__(self) -> str:
        return f"AlphabetSeries({list(self.coeffs)!r})"


def series_of_alphabet(alphabet: str, truncation: int) -> AlphabetSeries:
    if alphabet not in SERIES_ALPHABETS:
        raise ValueError(f"no Λ-series for alphabet {alphabet!r}")
    if truncation < 0:
        raise ValueError("truncation must be non-negative")
    return AlphabetSeries(Lam(alphabet, i) for i in range(truncation + 1))


def series_power(s: AlphabetSeries, k: int) -> AlphabetSeries:
    if k < 1:
        raise ValueError("power must be a positive integer")
    result = s
    for _ in range(k - 1):
        result = result * s
    return result


@lru_cache(maxsize=None)
def _multiple_series(alphabet: str, k: int, truncation: int) -> AlphabetSeries:
    return series_power(series_of_alphabet(alphabet, truncation), k)


def lambda_of_multiple(alphabet: str, k: int, i: int, truncation: int | None = None) -> MultiPoly:
    """Λ^i(k·alphabet); zero when ``i < 0``."""
    if alphabet not in ("A", "D"):
        raise ValueError("alphabet multiples are taken of A or D")
    if k < 1:
        raise ValueError("k must be a positive integer")
    if truncation is None:
        truncation = max(i, 0)
    if truncation < i:
        raise ValueError("truncation must be at least i")
    if i < 0:
        return MultiPoly()
    return _multiple_series(alphabet, k, truncation)[i]


def add_letter(s: AlphabetSeries, r: int, letter: MultiPoly) -> AlphabetSeries:
    """Multiply ``s`` by ``(1 + z·letter)^r``, i.e. add r copies of a letter."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    if len(letter) > 1:
        raise ValueError("a letter must be a single term")
    if letter.is_zero():
        return s
    factor = AlphabetSeries(
        letter ** t * comb(r, t) for t in range(s.truncation + 1)
    )
    return factor * s


# -- Newton's identities (normalized convention Λ^0 = 1) -------------------

def _e(alphabet: str, i: int) -> MultiPoly:
    if i == 0:
        return MultiPoly.const(1)
    return Lam(alphabet, i)


@lru_cache(maxsize=None)
def lambda_to_psi(i: int, alphabet: str = "E") -> MultiPoly:
    """Power sum ψ_i as a polynomial in Λ^1..Λ^i of ``alphabet``."""
    if i < 1:
        raise ValueError("power sums are indexed from 1")
    # ψ_i = (-1)^{i-1} i Λ^i + Σ_{j<i} (-1)^{i-1+j} Λ^{i-j} ψ_j
    acc = _e(alphabet, i) * ((-1) ** (i - 1) * i)
    for j in range(1, i):
        acc = acc + _e(alphabet, i - j) * lambda_to_psi(j, alphabet) * (-1) ** (i - 1 + j)
    return acc


@lru_cache(maxsize=None)
def psi_to_lambda(i: int) -> MultiPoly:
    """Λ^i as a polynomial in the power-sum generators ψ_1..ψ_i."""
    if i < 1:
        raise ValueError("elementary functions are indexed from 1 here")
    # i Λ^i = Σ_{j=1}^{i} (-1)^{j-1} Λ^{i-j} ψ_j
    acc = MultiPoly()
    for j in range(1, i + 1):
        prev = MultiPoly.const(1) if j == i else psi_to_lambda(i - j)
        acc = acc + prev * Lam("P", j) * (-1) ** (j - 1)
    return acc / i


# -- alphabet re-coordinatization ------------------------------------------

_CHAIN = ("A", "D", "E")


def _step(p: MultiPoly, src: str, dst: str) -> MultiPoly:
    mapping = {}
    for v in p.variables():
        a, i = v
        if a == "X":
            continue
        if a != src:
            raise ValueError(f"variable {v} does not belong to alphabet {src}")
        if (src, dst) == ("A", "D"):
            if i < 2:
                raise ValueError("Λ^0 A and Λ^1 A have no image in the D alphabet")
            mapping[v] = Lam("D", i - 2)
        elif (src, dst) == ("D", "A"):
            mapping[v] = Lam("A", i + 2)
        elif (src, dst) == ("D", "E"):
            mapping[v] = Lam("E", i) * factorial(i)
        elif (src, dst) == ("E", "D"):
            mapping[v] = Lam("D", i) / factorial(i)
        else:
            raise AssertionError((src, dst))
    return p.subs(mapping)


def reexpress(p: MultiPoly, src: str, dst: str) -> MultiPoly:
    """Rewrite ``p`` from one alphabet's Λ variables to another's.

    Uses Λ^i D = Λ^{i+2} A and Λ^i E = Λ^i D / i!, composed as needed.
    """
    if src not in _CHAIN or dst not in _CHAIN:
        raise ValueError("alphabets must be among A, D, E")
    a, b = _CHAIN.index(src), _CHAIN.index(dst)
    step = 1 if b > a else -1
    while a != b:
        p = _step(p, _CHAIN[a], _CHAIN[a + step])
        a += step
    return p


def taylor_assignment(values, alphabet: str = "A") -> dict:
    """Map Λ^i of ``alphabet`` to the given rational values."""
    return {(alphabet, i): Fraction(v) for i, v in enumerate(values)}
