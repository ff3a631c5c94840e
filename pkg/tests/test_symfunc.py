import itertools
import random
from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planecurve.poly import Lam, MultiPoly, x_letter
from planecurve.symfunc import (
    AlphabetSeries,
    add_letter,
    lambda_of_multiple,
    lambda_to_psi,
    psi_to_lambda,
    reexpress,
    series_of_alphabet,
    series_power,
)

from conftest import polys

L = Lam


def brute_multiple(alphabet, k, i):
    """Λ^i(k·alphabet) by enumerating all k-tuples of indices summing to i."""
    acc = MultiPoly()
    for idx in itertools.product(range(i + 1), repeat=k):
        if sum(idx) == i:
            acc = acc + prod((L(alphabet, j) for j in idx), start=MultiPoly.const(1))
    return acc


def elementary(letters, i):
    return sum((prod(c) for c in itertools.combinations(letters, i)), Fraction(0))


def test_series_of_alphabet():
    s = series_of_alphabet("A", 3)
    assert s.coeffs == tuple(L("A", i) for i in range(4))
    assert series_of_alphabet("D", 0).coeffs == (L("D", 0),)
    assert series_of_alphabet("E", 2).coeffs == (L("E", 0), L("E", 1), L("E", 2))
    with pytest.raises(ValueError):
        series_of_alphabet("A", -1)


def test_series_power_examples():
    s = series_of_alphabet("A", 3)
    assert series_power(s, 2)[3] == 2 * L("A", 0) * L("A", 3) + 2 * L("A", 1) * L("A", 2)
    assert series_power(s, 1) == s
    s2 = series_of_alphabet("A", 2)
    expected = 3 * L("A", 0) ** 2 * L("A", 2) + 3 * L("A", 0) * L("A", 1) ** 2
    assert series_power(s2, 3)[2] == expected == brute_multiple("A", 3, 2)


def test_mixed_truncation_keeps_the_minimum():
    a = series_of_alphabet("A", 5)
    b = series_of_alphabet("A", 2)
    assert (a * b).truncation == 2
    with pytest.raises(IndexError):
        (a * b)[3]


def test_lambda_of_multiple_examples():
    assert lambda_of_multiple("A", 2, 3, 5) == 2 * L("A", 0) * L("A", 3) + 2 * L("A", 1) * L("A", 2)
    assert lambda_of_multiple("D", 3, -2, 5).is_zero()
    assert lambda_of_multiple("A", 1, 4, 5) == L("A", 4)


@pytest.mark.parametrize("k,i", [(k, i) for k in range(1, 5) for i in range(0, 7)])
def test_lambda_of_multiple_matches_enumeration(k, i):
    assert lambda_of_multiple("A", k, i, 8) == brute_multiple("A", k, i)


def test_product_law_on_random_instances():
    rng = random.Random(11)
    for _ in range(25):
        i, j, k = rng.randint(0, 6), rng.randint(1, 3), rng.randint(1, 3)
        lhs = lambda_of_multiple("A", j + k, i, 6)
        rhs = sum(
            (lambda_of_multiple("A", j, a, 6) * lambda_of_multiple("A", k, i - a, 6)
             for a in range(i + 1)),
            MultiPoly(),
        )
        assert lhs == rhs


def test_add_letter_examples():
    x = x_letter()
    s = add_letter(series_of_alphabet("A", 1), 1, x)
    assert s[1] == L("A", 1) + x * L("A", 0)
    s = add_letter(series_of_alphabet("A", 2), 2, x)
    assert s[2] == L("A", 2) + 2 * x * L("A", 1) + x ** 2 * L("A", 0)
    base = series_of_alphabet("A", 3)
    assert add_letter(base, 3, MultiPoly()) == base


def test_add_letter_binomial_formula():
    x = x_letter()
    r, n = 4, 6
    s = add_letter(series_of_alphabet("A", n), r, x)
    from math import comb
    expected = sum((comb(r, t) * x ** t * L("A", n - t) for t in range(n + 1)), MultiPoly())
    assert s[n] == expected


@pytest.mark.parametrize("r", [1, 2, 3, 5])
def test_add_letter_r_copies_equals_r_single_additions(r):
    letter = x_letter(-1)
    base = series_power(series_of_alphabet("A", 5), 2)
    once = base
    for _ in range(r):
        once = add_letter(once, 1, letter)
    assert add_letter(base, r, letter) == once


def test_add_letter_rejects_multi_term_letters():
    with pytest.raises(ValueError):
        add_letter(series_of_alphabet("A", 2), 1, x_letter() + 1)


def test_lambda_to_psi_examples():
    e = lambda i: L("E", i)
    assert lambda_to_psi(3) == 3 * e(3) - 3 * e(1) * e(2) + e(1) ** 3
    assert lambda_to_psi(1) == e(1)
    assert lambda_to_psi(2) == e(1) ** 2 - 2 * e(2)
    assert lambda_to_psi(2, "D") == L("D", 1) ** 2 - 2 * L("D", 2)


def test_psi_to_lambda_examples():
    p = lambda i: L("P", i)
    assert psi_to_lambda(1) == p(1)
    assert psi_to_lambda(2) == (p(1) ** 2 - p(2)) / 2
    assert psi_to_lambda(3) == (p(1) ** 3 - 3 * p(1) * p(2) + 2 * p(3)) / 6


@pytest.mark.parametrize("i", range(1, 11))
def test_newton_round_trip(i):
    back = lambda_to_psi(i).subs({("E", j): psi_to_lambda(j) for j in range(1, i + 1)})
    assert back == L("P", i)
    forward = psi_to_lambda(i).subs({("P", j): lambda_to_psi(j) for j in range(1, i + 1)})
    assert forward == L("E", i)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=2, max_size=4),
       st.integers(1, 7))
def test_newton_against_concrete_letters(letters, i):
    point = {("E", j): elementary(letters, j) for j in range(1, i + 1)}
    assert lambda_to_psi(i).evaluate(point) == sum(a ** i for a in letters)


def test_reexpress_examples():
    assert reexpress(L("D", 3), "D", "A") == L("A", 5)
    assert reexpress(L("E", 2), "E", "D") == L("D", 2) / 2
    assert reexpress(L("A", 5), "A", "D") == L("D", 3)
    assert reexpress(L("D", 3), "D", "E") == 6 * L("E", 3)
    assert reexpress(L("A", 4), "A", "E") == 2 * L("E", 2)


def test_reexpress_rejects_low_a_indices():
    with pytest.raises(ValueError):
        reexpress(L("A", 1) * L("A", 3), "A", "D")
    with pytest.raises(ValueError):
        reexpress(L("A", 0), "A", "E")


@settings(max_examples=50, deadline=None)
@given(polys("D", min_index=0))
def test_reexpress_round_trips(p):
    assert reexpress(reexpress(p, "D", "E"), "E", "D") == p
    assert reexpress(reexpress(p, "D", "A"), "A", "D") == p


def test_series_requires_a_coefficient():
    with pytest.raises(ValueError):
        AlphabetSeries([])
