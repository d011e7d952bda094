import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from pathsig.algebra import ScalarKind, TruncatedTensor

settings.register_profile(
    "pathsig",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("pathsig")


def random_rational_tensor(rng: random.Random, d: int, depth: int,
                           span: int = 3) -> TruncatedTensor:
    levels = [[Fraction(rng.randint(-span, span), rng.randint(1, 3))
               for _ in range(d**k)] for k in range(depth + 1)]
    return TruncatedTensor(d, depth, ScalarKind.RATIONAL, levels)


@pytest.fixture
def rng():
    return random.Random(20260810)
