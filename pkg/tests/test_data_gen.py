import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import oracle_gen_vector, oracle_rand
from rankbench import Dataset, InvalidSize, Lcg, gen_vector, is_permutation, lcg_next
from rankbench.data_gen import format_dataset, load_dataset, parse_dataset, save_dataset

# first five outputs of srand(0) + rand() under the MSVC recurrence
SEED0_STREAM = [38, 7719, 21238, 2437, 8855]
GEN8_SEED0 = [6, 7, 0, 5, 1, 4, 3, 2]
GEN16_SEED0 = [6, 15, 8, 5, 11, 3, 12, 2, 0, 14, 4, 9, 13, 1, 10, 7]
# frozen from the longhand stream: state and value sum after 10**6 steps from seed 0
MILLION_STATE = 2646135872
MILLION_SUM = 16380483120


def test_lcg_first_step():
    assert lcg_next(0) == (38, 2531011)


def test_lcg_stream_seed0():
    state, out = 0, []
    for _ in range(5):
        v, state = lcg_next(state)
        out.append(v)
    assert out == SEED0_STREAM


def test_lcg_million_steps():
    state, total = 0, 0
    for _ in range(10**6):
        v, state = lcg_next(state)
        total += v
    assert state == MILLION_STATE
    assert total == MILLION_SUM


@given(st.integers(0, 2**32 - 1))
def test_lcg_pure_and_bounded(state):
    a = lcg_next(state)
    assert a == lcg_next(state)
    assert 0 <= a[0] <= 32767
    assert 0 <= a[1] < 2**32
    v2, s2 = lcg_next(a[1])
    g = oracle_rand(state)
    assert [next(g), next(g)] == [a[0], v2]


def test_lcg_class_matches_function():
    rng = Lcg(0)
    assert [rng.rand() for _ in range(5)] == SEED0_STREAM
    assert Lcg(2**32 + 5).state == 5


def test_gen_vector_golden():
    assert gen_vector(8, 0).values.tolist() == GEN8_SEED0
    assert gen_vector(16, 0).values.tolist() == GEN16_SEED0


def test_gen_vector_singleton():
    for seed in (0, 1, 12345, 2**32 - 1):
        assert gen_vector(1, seed).values.tolist() == [0]


def test_gen_vector_metadata():
    ds = gen_vector(512)
    assert ds.n == 512 and ds.seed == 0 and ds.distinct
    assert np.array_equal(np.sort(ds.values), np.arange(512))


@pytest.mark.parametrize("n", [0, -3])
def test_gen_vector_invalid_size(n):
    with pytest.raises(InvalidSize):
        gen_vector(n, 0)


@given(st.integers(1, 4096), st.integers(0, 2**32 - 1))
def test_gen_vector_is_permutation_and_matches_oracle(n, seed):
    ds = gen_vector(n, seed)
    assert is_permutation(ds.values)
    assert ds.values.tolist() == oracle_gen_vector(n, seed)
    assert np.array_equal(ds.values, gen_vector(n, seed).values)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_gen_vector_all_sizes_are_permutations(seed):
    for n in range(1, 4097, 7):
        assert is_permutation(gen_vector(n, seed).values)


def test_is_permutation():
    assert is_permutation([2, 0, 1])
    assert is_permutation([])
    assert not is_permutation([0, 0, 1])
    assert not is_permutation([1, 2, 3])
    assert not is_permutation([-1, 0])


def test_dataset_file_roundtrip(tmp_path):
    ds = gen_vector(10, 7)
    path = tmp_path / "d.txt"
    save_dataset(ds, path)
    text = path.read_text()
    assert text.splitlines()[0] == "# n=10 seed=7"
    assert len(text.splitlines()) == 11
    assert load_dataset(path) == ds


def test_dataset_file_without_seed():
    ds = Dataset([3, -1, 3])
    text = format_dataset(ds)
    assert text.startswith("# n=3 seed=none\n")
    back = parse_dataset(text)
    assert back.values.tolist() == [3, -1, 3] and back.seed is None and not back.distinct


def test_parse_dataset_rejects_bad_input():
    with pytest.raises(ValueError, match="header declares"):
        parse_dataset("# n=3 seed=0\n0\n1\n")
    with pytest.raises(ValueError, match="not an integer"):
        parse_dataset("0\nx\n")
