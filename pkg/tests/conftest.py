import numpy as np
import pytest

from gbent import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile jitted kernels once so timed tests measure steady state
    _kernels.warmup()


@pytest.fixture()
def rng():
    return np.random.Generator(np.random.PCG64(12345))


def random_function(rng, n, k):
    from gbent import GeneralizedBooleanFunction

    table = rng.integers(0, 1 << k, size=1 << n, dtype=np.uint8)
    return GeneralizedBooleanFunction(n, k, table)


def random_boolean(rng, n):
    from gbent import BooleanFunction

    return BooleanFunction(n, rng.integers(0, 2, size=1 << n, dtype=np.uint8))
