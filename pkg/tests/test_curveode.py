import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from planecurve.curveode import (
    SymbolicCapExceeded,
    bareiss_determinant,
    build_full_matrix,
    build_sylvester_matrix,
    curve_ode,
    evaluate_determinant,
    expand_determinant,
    sylvester_determinant,
)
from planecurve.invariants import dehomogenize
from planecurve.poly import Lam, MissingVariable, MultiPoly
from planecurve.symfunc import lambda_of_multiple

L = Lam
GOLDEN = Path(__file__).parent / "golden" / "cubic_expansion.txt"
MONGE_D = L("D", 0) ** 2 * L("D", 3) - 3 * L("D", 0) * L("D", 1) * L("D", 2) + 2 * L("D", 1) ** 3


def permutation_sign(perm):
    sign = 1
    for a, b in itertools.combinations(range(len(perm)), 2):
        if perm[a] > perm[b]:
            sign = -sign
    return sign


def leibniz_det(rows):
    """Determinant by the permutation sum; the independent oracle."""
    n = len(rows)
    total = MultiPoly() if isinstance(rows[0][0], MultiPoly) else Fraction(0)
    for perm in itertools.permutations(range(n)):
        term = permutation_sign(perm)
        for i, j in enumerate(perm):
            term = rows[i][j] * term
        total = total + term
    return total


def load_golden():
    terms = {}
    for line in GOLDEN.read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        coeff, *factors = line.split()
        mono = []
        for f in factors:
            idx, _, exp = f[1:].partition("^")
            mono.append((("D", int(idx)), int(exp or 1)))
        key = tuple(sorted(mono))
        assert key not in terms
        terms[key] = int(coeff)
    return MultiPoly(terms)


def random_assignment(alphabet, top, rng):
    return {(alphabet, i): Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 5))
            for i in range(top + 1)}


# -- matrix construction ------------------------------------------------------

def test_full_matrix_conic_rows():
    M = build_full_matrix(2)
    assert M.entries[0] == (L("A", 2), L("A", 3), lambda_of_multiple("A", 2, 3, 5))
    assert M.entries[2] == (L("A", 4), L("A", 5), lambda_of_multiple("A", 2, 5, 5))
    assert M.entries[0][2] == 2 * L("A", 0) * L("A", 3) + 2 * L("A", 1) * L("A", 2)


def test_full_matrix_cubic_block():
    M = build_full_matrix(3)
    assert M.side == 6
    assert M.columns == [(1, 2), (1, 1), (1, 0), (2, 1), (2, 0), (3, 0)]
    assert M.entries[0][3:5] == (lambda_of_multiple("A", 2, 3, 9), lambda_of_multiple("A", 2, 4, 9))
    assert M.max_superscript == 9


def test_sylvester_cubic_first_row():
    M = build_sylvester_matrix(3)
    assert M.entries[0] == (L("D", 0), L("D", 1), L("D", 2), MultiPoly(), L("D", 0) ** 2, MultiPoly())
    assert M.max_superscript == 7


def test_sylvester_conic_third_column():
    M = build_sylvester_matrix(2)
    col = [row[2] for row in M.entries]
    assert col == [MultiPoly(), L("D", 0) ** 2, 2 * L("D", 0) * L("D", 1)]


@pytest.mark.parametrize("n", range(2, 9))
def test_size_law(n):
    for M in (build_full_matrix(n), build_sylvester_matrix(n)):
        assert M.side == n * (n + 1) // 2
    assert build_full_matrix(n).max_superscript == n * (n + 3) // 2
    assert build_sylvester_matrix(n).max_superscript == (n - 1) * (n + 4) // 2


def test_rejects_low_degree():
    with pytest.raises(ValueError):
        build_full_matrix(1)
    with pytest.raises(ValueError):
        build_sylvester_matrix(0)


def test_cubic_sylvester_matches_printed_matrix():
    # the printed 6x6 matrix with Λ_0 = 1
    l = lambda i: L("D", i)
    one = MultiPoly.const(1)
    zero = MultiPoly()
    printed = [
        [one, l(1), l(2), zero, one, zero],
        [l(1), l(2), l(3), one, 2 * l(1), zero],
        [l(2), l(3), l(4), 2 * l(1), l(1) ** 2 + 2 * l(2), one],
        [l(3), l(4), l(5), l(1) ** 2 + 2 * l(2), 2 * l(1) * l(2) + 2 * l(3), 3 * l(1)],
        [l(4), l(5), l(6), 2 * l(1) * l(2) + 2 * l(3), l(2) ** 2 + 2 * l(1) * l(3) + 2 * l(4),
         3 * l(1) ** 2 + 3 * l(2)],
        [l(5), l(6), l(7), l(2) ** 2 + 2 * l(1) * l(3) + 2 * l(4),
         2 * l(2) * l(3) + 2 * l(1) * l(4) + 2 * l(5), l(1) ** 3 + 6 * l(1) * l(2) + 3 * l(3)],
    ]
    ours = [[dehomogenize(p, "D") for p in row] for row in build_sylvester_matrix(3).entries]
    assert ours == printed


# -- determinants ------------------------------------------------------------

def test_expand_diagonal():
    d = [L("D", 1), L("D", 2) + 1, L("D", 3) * 3]
    rows = [[d[i] if i == j else MultiPoly() for j in range(3)] for i in range(3)]
    assert expand_determinant(rows) == d[0] * d[1] * d[2]


@pytest.mark.parametrize("n", [2, 3])
def test_expand_matches_permutation_sum(n):
    M = build_sylvester_matrix(n)
    assert expand_determinant(M) == leibniz_det(M.entries)


def test_conic_sylvester_determinant_by_hand():
    assert expand_determinant(build_sylvester_matrix(2)) == -L("D", 0) * MONGE_D


def test_conic_factor():
    det = sylvester_determinant(2)
    q = det.exact_div(L("D", 0))
    assert q in (MONGE_D, -MONGE_D)
    full = expand_determinant(build_full_matrix(2))
    # with Λ^0 A = Λ^1 A = 0 the full determinant carries the factor Λ^2 A
    reduced = full.subs({("A", 0): 0, ("A", 1): 0})
    assert reduced.exact_div(L("A", 2)).primitive().subs(
        {("A", i): L("D", i - 2) for i in range(2, 6)}) == MONGE_D


def test_cap_refuses_large_expansion():
    with pytest.raises(SymbolicCapExceeded, match="use numeric evaluation"):
        expand_determinant(build_sylvester_matrix(4))
    with pytest.raises(SymbolicCapExceeded):
        curve_ode(4)


def test_bareiss_against_permutation_sum():
    rng = random.Random(3)
    for size in range(1, 6):
        for _ in range(5):
            rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(size)]
                    for _ in range(size)]
            assert bareiss_determinant(rows) == leibniz_det(rows)
    assert bareiss_determinant([[0, 1], [1, 0]]) == -1
    assert bareiss_determinant([[0, 1], [0, 2]]) == 0


def test_evaluate_identity_pattern():
    rows = [[L("D", 1) if i == j else L("D", 2) for j in range(3)] for i in range(3)]
    assert evaluate_determinant(rows, {("D", 1): 1, ("D", 2): 0}) == 1


def test_evaluate_circle_jet():
    circle = {("A", 0): 1, ("A", 1): 0, ("A", 2): Fraction(-1, 2), ("A", 3): 0,
              ("A", 4): Fraction(-1, 8), ("A", 5): 0}
    assert evaluate_determinant(build_full_matrix(2), circle) == 0


def test_evaluate_missing_variable():
    with pytest.raises(MissingVariable):
        evaluate_determinant(build_full_matrix(2), {("A", i): 1 for i in range(5)})


@pytest.mark.parametrize("n", [2, 3])
def test_evaluate_agrees_with_expansion(n):
    rng = random.Random(n)
    for M in (build_full_matrix(n), build_sylvester_matrix(n)):
        det = expand_determinant(M)
        for _ in range(5):
            point = random_assignment(M.alphabet, M.max_superscript, rng)
            assert evaluate_determinant(M, point) == det.evaluate(point)
            assert evaluate_determinant(M.entries, point) == det.evaluate(point)


@pytest.mark.parametrize("n", [2, 3])
def test_full_determinant_ignores_y_and_slope(n):
    rng = random.Random(100 + n)
    M = build_full_matrix(n)
    for _ in range(5):
        point = random_assignment("A", M.max_superscript, rng)
        ref = evaluate_determinant(M, point)
        for _ in range(3):
            point[("A", 0)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            point[("A", 1)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            assert evaluate_determinant(M, point) == ref


@pytest.mark.parametrize("n", [2, 3, 4])
def test_full_and_sylvester_agree(n):
    rng = random.Random(200 + n)
    full, syl = build_full_matrix(n), build_sylvester_matrix(n)
    signs = set()
    for _ in range(5):
        d = random_assignment("D", syl.max_superscript, rng)
        a = {("A", i + 2): v for (_, i), v in d.items()}
        a[("A", 0)] = a[("A", 1)] = 0
        fv, sv = evaluate_determinant(full, a), evaluate_determinant(syl, d)
        assert sv != 0 and abs(fv) == abs(sv)
        signs.add(fv / sv)
    assert len(signs) == 1


# -- normalized equation -------------------------------------------------------

def test_curve_ode_conic_bases():
    assert curve_ode(2, "D").poly == MONGE_D
    a = curve_ode(2, "A").poly
    assert a == L("A", 2) ** 2 * L("A", 5) - 3 * L("A", 2) * L("A", 3) * L("A", 4) + 2 * L("A", 3) ** 3
    e = curve_ode(2, "E").poly
    assert e == 3 * L("E", 0) ** 2 * L("E", 3) - 3 * L("E", 0) * L("E", 1) * L("E", 2) + L("E", 1) ** 3
    psi = curve_ode(2, "psi").psi
    assert psi.poly == L("P", 3)


def test_curve_ode_cubic_degree_and_weight():
    ode = curve_ode(3, "D")
    assert (ode.degree, ode.weight) == (10, 15)
    assert ode.poly.degrees() == {10} and ode.poly.weights() == {15}
    assert ode.poly.content() == 1 and ode.poly.leading_term()[1] > 0


def test_golden_cubic_expansion():
    golden = load_golden()
    assert len(golden) == 109
    det = dehomogenize(sylvester_determinant(3), "D")
    assert det == golden or det == -golden


def test_cubic_psi_form_is_free_of_psi1():
    ode = curve_ode(3, "psi")
    assert not ode.psi.uses_psi1()
    assert ode.psi.weights() == {15}


def test_unknown_basis():
    with pytest.raises(ValueError):
        curve_ode(2, "Q")


def test_matrix_json_header():
    data = build_sylvester_matrix(2).to_json()
    assert (data["n"], data["basis"], data["side"]) == (2, "SylvesterD", 3)
    assert len(data["entries"]) == 9
    back = [MultiPoly.from_json(e) for e in data["entries"]]
    assert back == [p for row in build_sylvester_matrix(2).entries for p in row]
