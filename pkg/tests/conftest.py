import random

import pytest
from gmpy2 import mpq

from exact_sumset import SumsetParams

# The published restriction constant (160) is what the acceptance criteria
# pin; unit and property tests run with a smaller experiment profile, which
# keeps runs fast and is still exact (verification catches any separation
# failure by retrying).
EXPERIMENT_PARAMS = SumsetParams(restriction_constant=6)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture
def params():
    return EXPERIMENT_PARAMS


def random_rat(rng, lo=-60, hi=60, dens=(1, 2, 3, 5)):
    return mpq(rng.randrange(lo, hi + 1), rng.choice(dens))


def random_rat_set(rng, max_size, lo=-60, hi=60, dens=(1, 2, 3, 5)):
    size = rng.randrange(1, max_size + 1)
    out = {random_rat(rng, lo, hi, dens) for _ in range(size)}
    return tuple(sorted(out))
