"""Text, LaTeX and JSON renderings of equations and matrices."""

from __future__ import annotations

from fractions import Fraction

from planecurve.curveode import CurveOde, PolyMatrix, derivative_factorial
from planecurve.poly import MultiPoly, to_text


def _latex_number(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"


def _latex_var(v, e: int) -> str:
    a, i = v
    if a == "D":
        base, wrap = f"\\Lambda_{{{i}}}", False
    elif a == "A":
        base, wrap = f"\\Lambda^{{{i}}}\\mathbb{{A}}", True
    elif a == "E":
        base, wrap = f"\\Lambda^{{{i}}}\\mathcal{{E}}", True
    elif a == "P":
        base, wrap = f"\\psi_{{{i}}}", False
    else:
        base, wrap = "x", False
    if e == 1:
        return base
    return f"({base})^{{{e}}}" if wrap else f"{base}^{{{e}}}"


def _prime(k: int) -> str:
    return "y" + "'" * k if k <= 3 else f"y^({k})"


def _derivative_text(v, e: int) -> str:
    k, fact = derivative_factorial(*v)
    base = _prime(k) if fact == 1 else f"({_prime(k)}/{k}!)"
    return base if e == 1 else f"{base}^{e}"


def _derivative_latex(v, e: int) -> str:
    k, fact = derivative_factorial(*v)
    y = "y" + "'" * k if k <= 3 else f"y^{{({k})}}"
    base = y if fact == 1 else f"\\frac{{{y}}}{{{k}!}}"
    if e == 1:
        return base
    return f"\\left({base}\\right)^{{{e}}}"


def poly_latex(p: MultiPoly, factor=_latex_var) -> str:
    if not p:
        return "0"
    parts = []
    for k, (m, c) in enumerate(p.items()):
        body = "".join(factor(v, e) for v, e in m)
        mag = abs(c)
        coeff = "" if mag == 1 and body else _latex_number(mag)
        sign = "-" if c < 0 else ("" if k == 0 else "+")
        parts.append(f"{sign}{coeff}{body}")
    return "".join(parts)


def _derivative_poly_text(p: MultiPoly) -> str:
    out = []
    for k, (m, c) in enumerate(p.items()):
        factors = [_derivative_text(v, e) for v, e in m]
        mag = abs(c)
        body = "*".join(factors if mag == 1 else [str(mag)] + factors)
        if k == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def cleared_derivative_form(ode: CurveOde) -> MultiPoly:
    """The equation in raw derivatives y^(k) with integer coefficients.

    Variables are reported as ("A", k) standing for y^(k) itself.
    """
    acc = MultiPoly()
    for m, c in ode.poly.items():
        coeff = Fraction(c)
        for v, e in m:
            coeff /= derivative_factorial(*v)[1] ** e
        mono = tuple((("A", derivative_factorial(*v)[0]), e) for v, e in m)
        acc = acc + MultiPoly.monomial(mono, coeff)
    return acc.primitive()


def equation_text(ode: CurveOde) -> str:
    if ode.basis == "psi":
        return f"{ode.psi.to_text()} = 0"
    if ode.basis == "derivative":
        return f"{_derivative_poly_text(ode.poly)} = 0"
    return f"{to_text(ode.poly)} = 0"


def equation_latex(ode: CurveOde) -> str:
    if ode.basis == "psi":
        return f"{ode.psi.to_latex()} = 0"
    if ode.basis == "derivative":
        return f"{poly_latex(ode.poly, _derivative_latex)} = 0"
    return f"{poly_latex(ode.poly)} = 0"


def equation_json(ode: CurveOde) -> dict:
    return {
        "n": ode.n,
        "basis": ode.basis,
        "degree": ode.degree,
        "weight": ode.weight,
        "poly": ode.poly.to_json(),
        "psi": ode.psi.to_json() if ode.psi is not None else None,
        "equation": equation_text(ode),
    }


def cleared_text(ode: CurveOde) -> str:
    p = cleared_derivative_form(ode)
    return to_text(p, name=lambda v: _prime(v[1])) + " = 0"


def matrix_text(M: PolyMatrix) -> str:
    labels = M.labels()
    lines = [f"# n={M.n} basis={M.basis} side={M.side}"]
    for j, row in enumerate(M.entries):
        for c, p in enumerate(row):
            lines.append(f"[{j},{c}] {labels[j][c]} = {to_text(p)}")
    return "\n".join(lines)


def matrix_latex(M: PolyMatrix) -> str:
    rows = [" & ".join(poly_latex(p) for p in row) for row in M.entries]
    body = " \\\\\n".join(rows)
    return f"\\begin{{vmatrix}}\n{body}\n\\end{{vmatrix}}"
