import hypothesis.strategies as st
import numpy as np
import pytest

from src.services.catalog import catalog_get
from src.services.grid import grid_from_values, make_grid_spec, sample


def exact_grid(values, step=1):
    """Exact GridFn over integer-indexed values (nested lists for n > 1)."""
    array = np.asarray(values, dtype=object)
    spec = make_grid_spec(step, [m - 1 for m in array.shape], array.ndim)
    return grid_from_values(spec, array, exact=True)


def catalog_grid(name, step=1, count=8, exact=True, parameters=None):
    entry = catalog_get(name, parameters)
    spec = make_grid_spec(step, count, entry.arity)
    return sample(entry.body, spec, exact=exact)


@st.composite
def monotone_grids(draw, max_1d=12, max_2d=4):
    """Integer aggregation functions: zero at the origin, non-decreasing on every axis."""
    n = draw(st.sampled_from([1, 2]))
    if n == 1:
        count = draw(st.integers(1, max_1d))
        steps = draw(st.lists(st.integers(0, 6), min_size=count, max_size=count))
        return exact_grid([0] + [int(v) for v in np.cumsum(steps)])
    counts = draw(st.tuples(st.integers(1, max_2d), st.integers(1, max_2d)))
    increments = np.array(
        draw(st.lists(st.integers(0, 4), min_size=(counts[0] + 1) * (counts[1] + 1),
                      max_size=(counts[0] + 1) * (counts[1] + 1))),
        dtype=object,
    ).reshape(counts[0] + 1, counts[1] + 1)
    increments[0, 0] = 0
    return exact_grid(np.cumsum(np.cumsum(increments, axis=0), axis=1).tolist())


@st.composite
def integer_grids(draw, max_1d=8, max_2d=3):
    """Arbitrary non-negative integer grid functions."""
    n = draw(st.sampled_from([1, 2]))
    if n == 1:
        count = draw(st.integers(1, max_1d))
        return exact_grid(draw(st.lists(st.integers(0, 20), min_size=count + 1, max_size=count + 1)))
    counts = draw(st.tuples(st.integers(1, max_2d), st.integers(1, max_2d)))
    size = (counts[0] + 1) * (counts[1] + 1)
    flat = draw(st.lists(st.integers(0, 20), min_size=size, max_size=size))
    return exact_grid(np.array(flat, dtype=object).reshape(counts[0] + 1, counts[1] + 1).tolist())


@pytest.fixture
def example1_grid():
    return catalog_grid("example1_A", step=1, count=40)
