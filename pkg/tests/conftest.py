"""Shared hypothesis strategies and helpers for the test suite."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from su3forms.forms import DIM, EXACT, FLOAT, Form, blades_of_degree

rationals = st.fractions(
    min_value=Fraction(-6), max_value=Fraction(6), max_denominator=7
)

small_floats = st.floats(
    min_value=-4.0, max_value=4.0, allow_nan=False, allow_infinity=False
)


def forms_of_degree(k: int, mode: str = EXACT, max_terms: int = 6):
    """Homogeneous degree-k forms with a bounded number of blade terms."""
    scalars = rationals if mode == EXACT else small_floats
    blades = blades_of_degree(k)
    return st.dictionaries(
        st.sampled_from(blades), scalars, max_size=min(max_terms, len(blades))
    ).map(lambda d: Form(mode, d))


def vectors(mode: str = EXACT):
    scalars = rationals if mode == EXACT else small_floats
    return st.lists(scalars, min_size=DIM, max_size=DIM).map(
        lambda c: Form.vector(c, mode)
    )


mixed_forms = st.integers(min_value=0, max_value=DIM).flatmap(forms_of_degree)
