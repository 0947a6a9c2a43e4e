import random

from hypothesis import strategies as st

from topocut.generate import random_points


@st.composite
def general_point_sets(draw, dims=(1, 2, 3), max_size=6, equal=False, coord_range=50):
    """Seeded general-position instances; hypothesis shrinks over the seed and sizes."""
    d = draw(st.sampled_from(dims))
    if equal:
        sizes = [draw(st.integers(1, max_size))] * d
    else:
        sizes = [draw(st.integers(1, max_size)) for _ in range(d)]
    seed = draw(st.integers(0, 2**32 - 1))
    return random_points(d, sizes, random.Random(seed), coord_range)
