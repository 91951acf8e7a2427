import os
import random
from pathlib import Path

import pytest

from pvkit.fieldcore.ratfunc import get_field

DATA_DIR = Path(__file__).resolve().parent / "data"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

# PVKIT_PROPERTY_SCALE multiplies the number of random trials in property tests
PROPERTY_SCALE = int(os.getenv("PVKIT_PROPERTY_SCALE", "1"))
PROPERTY_SEED = int(os.getenv("PVKIT_PROPERTY_SEED", "20240601"))


@pytest.fixture
def rng():
    return random.Random(PROPERTY_SEED)


@pytest.fixture
def trials():
    return 6 * PROPERTY_SCALE


@pytest.fixture
def qx():
    """Q(x)."""
    return get_field(1)


@pytest.fixture
def f2():
    return get_field(2)


@pytest.fixture
def f3():
    return get_field(3)


@pytest.fixture
def f4():
    return get_field(4)


def random_poly_text(rng: random.Random, max_degree: int = 2, with_zeta: bool = False) -> str:
    terms = []
    for power in range(rng.randint(0, max_degree) + 1):
        c = rng.randint(-3, 3)
        if c == 0:
            continue
        coeff = f"({c}*zeta)" if with_zeta and rng.random() < 0.3 else f"({c})"
        terms.append(coeff if power == 0 else f"{coeff}*x^{power}")
    return " + ".join(terms) if terms else "1"


def random_ratfunc(field, rng: random.Random, with_zeta: bool = False, max_degree: int = 2):
    """A random element with small coefficients; never zero."""
    while True:
        num = field.parse(random_poly_text(rng, max_degree, with_zeta))
        den = field.parse(random_poly_text(rng, max_degree, with_zeta))
        if den.is_zero or num.is_zero:
            continue
        return num / den
