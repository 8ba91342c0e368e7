"""Hypothesis strategies for PMFs, joint tables and orders."""

import numpy as np
from hypothesis import strategies as st

weights = st.floats(min_value=0.05, max_value=1.0, allow_nan=False)


@st.composite
def pmfs(draw, min_size=2, max_size=5, size=None):
    k = size or draw(st.integers(min_size, max_size))
    w = np.array(draw(st.lists(weights, min_size=k, max_size=k)))
    return w / w.sum()


@st.composite
def joints(draw, max_rows=4, max_cols=4):
    k = draw(st.integers(2, max_rows))
    g = draw(st.integers(2, max_cols))
    w = np.array(draw(st.lists(weights, min_size=k * g, max_size=k * g))).reshape(k, g)
    return w / w.sum()


@st.composite
def cond_tables(draw, k, n):
    cols = [draw(pmfs(size=k)) for _ in range(n)]
    return np.stack(cols, axis=1)


finite_orders = st.sampled_from([-3.0, -1.5, -0.5, 0.25, 0.5, 0.8, 1.0, 1.5, 2.0, 4.0])
positive_orders = st.sampled_from([0.25, 0.5, 0.8, 1.0, 1.5, 2.0, 4.0, float("inf")])
deformations = st.sampled_from([-1.5, -0.5, 0.3, 0.7, 1.0, 1.4, 2.0, 3.0])
