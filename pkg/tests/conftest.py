from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from harmquat.poly import Polynomial3, QField, VectorPoly
from harmquat.quaternion import Quaternion

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def vectors():
    return st.tuples(rationals, rationals, rationals)


def quaternions():
    return st.builds(Quaternion, rationals, vectors())


@st.composite
def polynomials(draw, max_degree=3, max_terms=5):
    exps = st.tuples(*(st.integers(0, max_degree) for _ in range(3))).filter(
        lambda e: sum(e) <= max_degree)
    terms = draw(st.dictionaries(exps, rationals, max_size=max_terms))
    return Polynomial3(terms)


def vector_polys(max_degree=3):
    return st.builds(VectorPoly, polynomials(max_degree), polynomials(max_degree), polynomials(max_degree))


def qfields(max_degree=2):
    return st.builds(QField, polynomials(max_degree), vector_polys(max_degree))


def F(s):
    return Fraction(s)
