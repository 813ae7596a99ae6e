from math import gcd

from hypothesis import strategies as st

from lensbound import LensSpace


@st.composite
def lens_spaces(draw, pmin=2, pmax=400):
    p = draw(st.integers(pmin, pmax))
    q = draw(st.integers(1, p - 1).filter(lambda q: gcd(p, q) == 1))
    return LensSpace(p, q)
