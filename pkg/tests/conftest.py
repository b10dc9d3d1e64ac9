import os

import pytest

from implbases import FormalContext, SingleParamSpec, gen_single

DATA_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "data")

# 5x5 running example used across the suite:
#      a1 a2 a3 a4 a5
#  o1   X  X  .  .  .
#  o2   .  X  .  X  X
#  o3   .  X  X  X  .
#  o4   .  .  X  .  X
#  o5   .  .  .  X  X
TOY_ROWS = [
    [1, 1, 0, 0, 0],
    [0, 1, 0, 1, 1],
    [0, 1, 1, 1, 0],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 1],
]


@pytest.fixture
def toy_context() -> FormalContext:
    return FormalContext(TOY_ROWS)


@pytest.fixture
def toy_context_path() -> str:
    return os.path.join(DATA_DIR, "toy_context.cxt")


def random_contexts(count: int, max_objects: int = 10, max_attributes: int = 8,
                    p_choices=(0.3, 0.5, 0.7), base_seed: int = 0):
    """Deterministic corpus of small random contexts."""
    import random

    rng = random.Random(base_seed)
    out = []
    for _ in range(count):
        n_obj = rng.randint(1, max_objects)
        n_attr = rng.randint(1, max_attributes)
        p = rng.choice(p_choices)
        spec = SingleParamSpec(n_obj, n_attr, p, seed=rng.randrange(2 ** 32))
        out.append(gen_single(spec))
    return out
