from fractions import Fraction

from hypothesis import strategies as st

from planecurve.poly import MultiPoly


def fractions(max_num=6, max_den=4):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def polys(alphabet="D", min_index=1, max_index=4, max_terms=4, max_exp=2):
    """Small random polynomials in Λ^min_index..Λ^max_index of one alphabet."""
    mono = st.dictionaries(
        st.integers(min_index, max_index), st.integers(1, max_exp), max_size=3
    ).map(lambda d: tuple(sorted(((alphabet, i), e) for i, e in d.items())))
    return st.dictionaries(mono, fractions(), max_size=max_terms).map(MultiPoly)
