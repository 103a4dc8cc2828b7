import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def oracle_sort(values):
    """Plain insertion sort over Python ints; shares nothing with the package."""
    out = []
    for v in (int(x) for x in values):
        k = len(out)
        while k > 0 and out[k - 1] > v:
            k -= 1
        out.insert(k, v)
    return out


def oracle_rand(seed):
    """MSVC rand() stream written out longhand."""
    s = seed
    while True:
        s = (s * 214013 + 2531011) % 4294967296
        yield (s // 65536) % 32768


def oracle_gen_vector(n, seed):
    x = list(range(n))
    g = oracle_rand(seed)
    for i in range(n):
        r = next(g) % n
        x[i], x[r] = x[r], x[i]
    return x


def count_inversions(values):
    v = [int(x) for x in values]
    return sum(1 for i in range(len(v)) for j in range(i + 1, len(v)) if v[i] > v[j])


@pytest.fixture
def oracles():
    class O:
        sort = staticmethod(oracle_sort)
        gen_vector = staticmethod(oracle_gen_vector)
        inversions = staticmethod(count_inversions)

    return O
