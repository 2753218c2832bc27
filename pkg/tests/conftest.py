"""Shared hypothesis strategies for the test suite."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from supercircle.grassmann import GrassmannAlgebra


def fractions(max_num: int = 6, max_den: int = 4):
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def grassmann_numbers(alg: GrassmannAlgebra, max_terms: int = 5):
    """Random elements of a fixed rational Grassmann algebra."""
    masks = st.integers(min_value=0, max_value=(1 << alg.gens) - 1)
    return st.dictionaries(masks, fractions(), max_size=max_terms).map(alg.from_terms)


def even_grassmann_numbers(alg: GrassmannAlgebra, max_terms: int = 5):
    even_masks = [m for m in range(1 << alg.gens) if not bin(m).count("1") & 1]
    return st.dictionaries(
        st.sampled_from(even_masks), fractions(), max_size=max_terms
    ).map(alg.from_terms)
