"""Exact sparse multivariate polynomials over the rationals.

Variables are pairs ``(alphabet, index)``:

  ("A", i)  Λ^i of the alphabet A, i.e. the normalized derivative D^i y
  ("D", i)  Λ^i of the shifted alphabet D  (Λ^i D = Λ^{i+2} A)
  ("E", i)  Λ^i of the rescaled alphabet E (Λ^i E = Λ^i D / i!)
  ("P", i)  the power sum ψ_i (abstract generator)
  ("X", 0)  the auxiliary indeterminate x

A monomial is a tuple of ``(var, exponent)`` pairs sorted by variable.  Since
the alphabet letters sort alphabetically in the order above, plain tuple
comparison gives the canonical variable order.  Only ``X`` may carry a
negative exponent; ``x**-1`` is the formal inverse letter ``1/x``.

Coefficients are ``fractions.Fraction`` and are always reduced.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

ALPHABETS = ("A", "D", "E", "P", "X")

Var = tuple  # (alphabet, index)
Monomial = tuple  # ((var, exp), ...)
Scalar = Union[int, Fraction]

ONE_MONO: Monomial = ()


class MissingVariable(KeyError):
    pass


def var(alphabet: str, index: int = 0) -> Var:
    if alphabet not in ALPHABETS:
        raise ValueError(f"unknown alphabet {alphabet!r}")
    if index < 0:
        raise ValueError("variable index must be non-negative")
    if alphabet == "X" and index != 0:
        raise ValueError("the auxiliary indeterminate x has index 0")
    return (alphabet, index)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        e2 = exps.get(v, 0) + e
        if e2:
            exps[v] = e2
        else:
            del exps[v]
    return tuple(sorted(exps.items()))


def mono_pow(a: Monomial, k: int) -> Monomial:
    if k == 0:
        return ONE_MONO
    return tuple((v, e * k) for v, e in a)


def mono_degree(m: Monomial) -> int:
    return sum(e for v, e in m if v[0] != "X")


def mono_weight(m: Monomial) -> int:
    return sum(v[1] * e for v, e in m if v[0] != "X")


def mono_divides(d: Monomial, m: Monomial) -> bool:
    exps = dict(m)
    return all(v[0] == "X" or exps.get(v, 0) >= e for v, e in d)


def _var_rank(v: Var) -> tuple:
    return (-ALPHABETS.index(v[0]), -v[1])


def lex_key(m: Monomial) -> tuple:
    """Sort key for pure lex order: the monomial with the larger exponent on
    the first (smallest) variable where they differ is the greater one."""
    return tuple((_var_rank(v), e) for v, e in m)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


class MultiPoly:
    """Immutable polynomial; ``terms`` maps monomials to nonzero Fractions."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Scalar) -> "MultiPoly":
        return cls({ONE_MONO: c})

    @classmethod
    def variable(cls, alphabet: str, index: int = 0, exp: int = 1) -> "MultiPoly":
        v = var(alphabet, index)
        if exp < 0 and alphabet != "X":
            raise ValueError("negative exponents are only allowed on x")
        if exp == 0:
            return cls.const(1)
        return cls._raw({((v, exp),): Fraction(1)})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: Scalar = 1) -> "MultiPoly":
        return cls({tuple(sorted(mono)): coeff})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list:
        """Terms in canonical order (lex-greatest monomial first)."""
        return sorted(self._terms.items(), key=lambda t: lex_key(t[0]), reverse=True)

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(m == ONE_MONO for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONO, Fraction(0))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(sorted(mono)), Fraction(0))

    def variables(self) -> list:
        return sorted({v for m in self._terms for v, _ in m})

    def alphabets(self) -> set:
        return {v[0] for v in self.variables()}

    def degrees(self) -> set:
        return {mono_degree(m) for m in self._terms}

    def weights(self) -> set:
        return {mono_weight(m) for m in self._terms}

    def degree(self) -> int:
        return max(self.degrees(), default=0)

    def weight(self) -> int:
        return max(self.weights(), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_isobaric(self) -> bool:
        return len(self.weights()) <= 1

    def leading_term(self) -> tuple:
        m = max(self._terms, key=lex_key)
        return m, self._terms[m]

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly()
            return MultiPoly._raw({m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lm, lc = divisor.leading_term()
        rem = self
        quot = MultiPoly()
        while rem:
            m, c = rem.leading_term()
            if not mono_divides(lm, m):
                raise ArithmeticError("division is not exact")
            q = MultiPoly.monomial(mono_mul(m, tuple((v, -e) for v, e in lm)), c / lc)
            quot = quot + q
            rem = rem - q * divisor
        return quot

    # -- substitution -----------------------------------------------------

    def map_coefficients(self, f) -> "MultiPoly":
        return MultiPoly({m: f(c) for m, c in self._terms.items()})

    def subs(self, mapping: Mapping[Var, "MultiPoly | Scalar"]) -> "MultiPoly":
        """Substitute polynomials (or scalars) for some variables."""
        images = {v: (p if isinstance(p, MultiPoly) else MultiPoly.const(p))
                  for v, p in mapping.items()}
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                if e < 0:
                    raise ValueError(f"cannot substitute into negative power of {v}")
                powers[key] = images[v] ** e
            return powers[key]

        acc: dict = {}
        for m, c in self._terms.items():
            kept = []
            term = None
            for v, e in m:
                if v in images:
                    factor = power(v, e)
                    term = factor if term is None else term * factor
                else:
                    kept.append((v, e))
            head = MultiPoly._raw({tuple(kept): c})
            piece = head if term is None else head * term
            for pm, pc in piece._terms.items():
                acc[pm] = acc.get(pm, 0) + pc
        return MultiPoly._raw({m: c for m, c in acc.items() if c})

    def evaluate(self, assignment: Mapping[Var, Scalar]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            val = c
            for v, e in m:
                try:
                    x = assignment[v]
                except KeyError:
                    raise MissingVariable(v) from None
                val *= Fraction(x) ** e
            total += val
        return total

    # -- normalization ----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        if not self._terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self._terms.values():
            num = math.gcd(num, c.numerator)
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "MultiPoly":
        """Content 1, lex-greatest monomial with a positive coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        return self / c

    def __repr__(self) -> str:
        return f"MultiPoly({to_text(self)!r})"

    # -- JSON -------------------------------------------------------------

    def to_json(self) -> dict:
        variables = self.variables()
        index = {v: k for k, v in enumerate(variables)}
        return {
            "vars": [[a, i] for a, i in variables],
            "terms": [
                {"coeff": format_fraction(c),
                 "monomial": [[index[v], e] for v, e in m]}
                for m, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        variables = [var(a, i) for a, i in data["vars"]]
        terms: dict = {}
        for t in data["terms"]:
            m = tuple(sorted((variables[k], e) for k, e in t["monomial"]))
            if m in terms:
                raise ValueError("duplicate monomial in polynomial JSON")
            terms[m] = parse_fraction(t["coeff"])
        return cls(terms)


def format_fraction(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_fraction(s: str) -> Fraction:
    if not isinstance(s, str) or "." in s or "e" in s.lower():
        raise ValueError(f"not a decimal-free fraction string: {s!r}")
    return Fraction(s)


def Lam(alphabet: str, index: int, exp: int = 1) -> MultiPoly:
    """Λ^index of an alphabet as a polynomial (zero for negative index)."""
    if index < 0:
        return MultiPoly()
    return MultiPoly.variable(alphabet, index, exp)


def x_letter(exp: int = 1) -> MultiPoly:
    return MultiPoly.variable("X", 0, exp)


def poly_sum(polys: Iterable[MultiPoly]) -> MultiPoly:
    acc: dict = {}
    for p in polys:
        for m, c in p._terms.items():
            acc[m] = acc.get(m, 0) + c
    return MultiPoly._raw({m: c for m, c in acc.items() if c})


_PLAIN_NAMES = {"A": "a", "D": "d", "E": "e", "P": "psi_"}


def var_name(v: Var) -> str:
    if v[0] == "X":
        return "x"
    return f"{_PLAIN_NAMES[v[0]]}{v[1]}"


def to_text(p: MultiPoly, name=var_name) -> str:
    """Plain-text rendering, terms in canonical order."""
    if not p:
        return "0"
    parts = []
    for k, (m, c) in enumerate(p.items()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        factors = [name(v) if e == 1 else f"{name(v)}^{e}" for v, e in m]
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if k == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)
