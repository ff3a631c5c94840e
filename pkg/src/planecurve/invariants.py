"""Semi-invariants: the derivations ∇_D, ∇_E and the power-sum basis.

Both derivations act in the normalized ring where Λ^0 = 1:

  ∇_D : Λ^i ↦ i Λ^{i-1}
  ∇_E : Λ^i ↦ Λ^{i-1}

so that ∇_E ψ_1 = 1 and ∇_E ψ_i = 0 for i ≥ 2.  Homogeneous forms carrying
explicit Λ^0 powers are dehomogenized before a derivation is applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from planecurve.poly import (
    Lam,
    MultiPoly,
    format_fraction,
    mono_degree,
    mono_mul,
    parse_fraction,
)
from planecurve.symfunc import lambda_to_psi, psi_to_lambda


@dataclass(frozen=True)
class Derivation:
    alphabet: str

    def __post_init__(self):
        if self.alphabet not in ("D", "E"):
            raise ValueError("derivations are defined on the D and E alphabets")

    def image(self, index: int) -> MultiPoly:
        scale = index if self.alphabet == "D" else 1
        below = MultiPoly.const(1) if index == 1 else Lam(self.alphabet, index - 1)
        return below * scale

    def __call__(self, p: MultiPoly) -> MultiPoly:
        return nabla(self, p)


NABLA_D = Derivation("D")
NABLA_E = Derivation("E")


def _derivation(d) -> Derivation:
    return d if isinstance(d, Derivation) else Derivation(d)


def nabla(d, p: MultiPoly) -> MultiPoly:
    d = _derivation(d)
    for v in p.variables():
        if v[0] != d.alphabet:
            raise ValueError(f"variable {v} is outside the {d.alphabet} alphabet")
        if v[1] == 0:
            raise ValueError("set Λ^0 = 1 (dehomogenize) before applying a derivation")
    acc: dict = {}
    for m, c in p.terms.items():
        for pos, (v, e) in enumerate(m):
            rest = m[:pos] + ((v, e - 1),) + m[pos + 1:] if e > 1 else m[:pos] + m[pos + 1:]
            for im, ic in d.image(v[1]).terms.items():
                key = mono_mul(rest, im)
                acc[key] = acc.get(key, 0) + c * e * ic
    return MultiPoly(acc)


def is_semi_invariant(p: MultiPoly, alphabet: str = "E") -> bool:
    return nabla(alphabet, p).is_zero()


# -- homogeneous <-> normalized ----------------------------------------------

def _single_alphabet(p: MultiPoly, default: str) -> str:
    found = p.alphabets() - {"X"}
    if len(found) > 1:
        raise ValueError(f"polynomial mixes alphabets {sorted(found)}")
    return found.pop() if found else default


def homogenize(p, target_degree: int, alphabet: str | None = None) -> MultiPoly:
    """Pad every monomial with powers of Λ^0 up to ``target_degree``."""
    if isinstance(p, PsiExpression):
        p = p.to_lambda(alphabet or "E")
    alphabet = alphabet or _single_alphabet(p, "E")
    lam0 = (alphabet, 0)
    acc: dict = {}
    for m, c in p.terms.items():
        deg = mono_degree(m)
        if deg > target_degree:
            raise ValueError(f"monomial of degree {deg} exceeds target {target_degree}")
        if deg < target_degree:
            m = mono_mul(m, ((lam0, target_degree - deg),))
        acc[m] = acc.get(m, 0) + c
    return MultiPoly(acc)


def dehomogenize(p: MultiPoly, alphabet: str | None = None) -> MultiPoly:
    alphabet = alphabet or _single_alphabet(p, "E")
    return p.subs({(alphabet, 0): 1})


# -- power sums ---------------------------------------------------------------

class PsiExpression:
    """Polynomial in abstract power sums ψ_1, ψ_2, … with rational coefficients."""

    __slots__ = ("poly",)

    def __init__(self, poly: MultiPoly):
        if poly.alphabets() - {"P"}:
            raise ValueError("a ψ-expression may only contain power-sum generators")
        self.poly = poly

    @classmethod
    def from_terms(cls, terms) -> "PsiExpression":
        """``terms`` is an iterable of ``(coeff, {index: exp})``."""
        acc = MultiPoly()
        for coeff, psis in terms:
            mono = tuple(sorted((("P", i), e) for i, e in psis.items()))
            acc = acc + MultiPoly.monomial(mono, Fraction(coeff))
        return cls(acc)

    def __eq__(self, other):
        if not isinstance(other, PsiExpression):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self) -> str:
        return f"PsiExpression({self.to_text()!r})"

    def coefficient(self, psis: dict) -> Fraction:
        return self.poly.coefficient(tuple((("P", i), e) for i, e in psis.items()))

    def weights(self) -> set:
        return self.poly.weights()

    def uses_psi1(self) -> bool:
        return ("P", 1) in self.poly.variables()

    def primitive(self) -> "PsiExpression":
        return PsiExpression(self.poly.primitive())

    def to_lambda(self, alphabet: str = "E") -> MultiPoly:
        indices = {v[1] for v in self.poly.variables()}
        return self.poly.subs({("P", i): lambda_to_psi(i, alphabet) for i in indices})

    def _sorted_terms(self) -> list:
        out = []
        for m, c in self.poly.items():
            psis = sorted(((v[1], e) for v, e in m), reverse=True)
            out.append((psis, c))
        # heaviest ψ first, then by coefficient-free lexicographic shape
        out.sort(key=lambda t: t[0], reverse=True)
        return out

    def to_json(self) -> dict:
        return {
            "terms": [
                {"coeff": format_fraction(c), "psis": [[i, e] for i, e in psis]}
                for psis, c in self._sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data) -> "PsiExpression":
        terms = []
        for t in data["terms"]:
            psis: dict = {}
            for i, e in t["psis"]:
                if i in psis:
                    raise ValueError("repeated ψ index in a term")
                psis[i] = e
            terms.append((parse_fraction(t["coeff"]), psis))
        return cls.from_terms(terms)

    def to_text(self) -> str:
        if self.poly.is_zero():
            return "0"
        parts = []
        for k, (psis, c) in enumerate(self._sorted_terms()):
            factors = [f"psi_{i}" if e == 1 else f"psi_{i}^{e}" for i, e in psis]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if k == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_latex(self) -> str:
        if self.poly.is_zero():
            return "0"
        parts = []
        for k, (psis, c) in enumerate(self._sorted_terms()):
            factors = "".join(
                f"\\psi_{{{i}}}" if e == 1 else f"\\psi_{{{i}}}^{{{e}}}" for i, e in psis
            )
            mag = abs(c)
            coeff = "" if mag == 1 and factors else _latex_number(mag)
            sign = "-" if c < 0 else ("" if k == 0 else "+")
            parts.append(f"{sign}{coeff}{factors}")
        return "".join(parts)


def _latex_number(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


class NotInPsiSubring(ValueError):
    pass


def to_psi(p: MultiPoly, alphabet: str = "E", allow_psi1: bool = False) -> PsiExpression:
    """Rewrite a normalized Λ-polynomial (Λ^0 = 1) in the power-sum basis.

    Every polynomial in Λ^1, Λ^2, … has a unique ψ form; semi-invariants are
    exactly those free of ψ_1.  A surviving ψ_1 is reported, not dropped.
    """
    for v in p.variables():
        if v[0] != alphabet or v[1] == 0:
            raise ValueError(f"unexpected variable {v}; dehomogenize first")
    indices = {v[1] for v in p.variables()}
    psi = PsiExpression(p.subs({(alphabet, i): psi_to_lambda(i) for i in indices}))
    if psi.uses_psi1() and not allow_psi1:
        raise NotInPsiSubring("polynomial is not in the subring generated by ψ_2, ψ_3, …")
    return psi


def power_sum(i: int) -> PsiExpression:
    return PsiExpression(Lam("P", i))


def monge_invariant() -> PsiExpression:
    return power_sum(3)


def halphen_invariant() -> PsiExpression:
    return PsiExpression.from_terms([
        (48, {5: 1, 3: 1}),
        (-20, {3: 2, 2: 1}),
        (-1, {2: 4}),
        (12, {2: 2, 4: 1}),
        (-36, {4: 2}),
    ])
