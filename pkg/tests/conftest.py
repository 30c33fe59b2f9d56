import math
import random

import pytest

from bearingcap.geometry import DimensionlessSection, SectionPlane


class Rand:
    """Random source, pulled out into fixture with repr so the seed is
    displayed on failing tests"""

    def __init__(self, seed=0):
        self.seed = seed or random.randint(0, 2**32 - 1)
        self.rand = random.Random(self.seed)

    def __repr__(self):
        return f"Rand({self.seed})"

    def uniform(self, a, b):
        return self.rand.uniform(a, b)

    def log_uniform(self, a, b):
        """random float with a uniformly distributed logarithm"""
        return math.exp(self.rand.uniform(math.log(a), math.log(b)))

    def section(self):
        """random valid section of either plane"""
        alpha = self.log_uniform(1e-6, 1e-2)
        if self.rand.random() < 0.5:
            tau = 1 + alpha + self.log_uniform(1e-3, 1.0)
            beta = self.uniform(0.2, 1.8) * min(tau, 1.0)
            return DimensionlessSection(
                tau=tau, alpha=alpha, beta=beta, plane=SectionPlane.SECTION_I
            )
        if self.rand.random() < 0.5:
            tau = 1 + alpha + self.log_uniform(1e-2, 10.0)
        else:
            tau = -self.log_uniform(1.0, 10.0)
        return DimensionlessSection(tau=tau, alpha=alpha, plane=SectionPlane.SECTION_II)


@pytest.fixture
def rand():
    yield Rand()
