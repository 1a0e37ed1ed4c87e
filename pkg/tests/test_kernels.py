import pytest
from itertools import combinations_with_replacement
from math import comb

from plethyray.kernels import (
    ENV_BACKEND,
    count_capped_multisets,
    numba_available,
    resolve_backend,
)

BACKENDS = ["python", "numpy"] + (["numba"] if numba_available() else [])


def brute(contents, d, caps):
    total = 0
    for combo in combinations_with_replacement(range(len(contents)), d):
        sums = [0] * len(caps)
        for idx in combo:
            for i, v in enumerate(contents[idx]):
                sums[i] += v
        if tuple(sums) == tuple(caps):
            total += 1
    return total


CASES = [
    ([(2,), (1,), (0,)], 2, (2,)),
    ([(2,), (1,), (0,)], 3, (4,)),
    ([(2, 0), (1, 1), (0, 2), (0, 0)], 3, (2, 2)),
    ([(3, 0), (2, 1), (1, 2), (0, 3), (1, 0)], 4, (5, 4)),
    ([(1, 1, 0), (0, 1, 1), (1, 0, 1)], 4, (3, 3, 2)),
    ([(0,)], 5, (0,)),
    ([(2, 2)], 3, (6, 6)),
]


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("contents,d,caps", CASES)
def test_backends_match_brute_force(backend, contents, d, caps):
    assert count_capped_multisets(contents, d, caps, backend=backend) == brute(contents, d, caps)


@pytest.mark.parametrize("contents,d,caps", CASES)
def test_backends_agree_with_each_other(contents, d, caps):
    values = {b: count_capped_multisets(contents, d, caps, backend=b) for b in BACKENDS}
    assert len(set(values.values())) == 1, values


def test_empty_caps_counts_all_multisets():
    assert count_capped_multisets([(), (), ()], 4, ()) == comb(3 + 4 - 1, 4)


def test_d_zero():
    assert count_capped_multisets([(1,)], 0, (0,)) == 1
    assert count_capped_multisets([(1,)], 0, (2,)) == 0


def test_unusable_contents_dropped():
    # entries exceeding caps can never appear in a valid multiset
    assert count_capped_multisets([(5,), (1,)], 2, (2,)) == 1


def test_env_flag_selects_backend(monkeypatch):
    monkeypatch.setenv(ENV_BACKEND, "numpy")
    assert resolve_backend() == "numpy"
    monkeypatch.setenv(ENV_BACKEND, "python")
    assert resolve_backend() == "python"
    monkeypatch.setenv(ENV_BACKEND, "auto")
    assert resolve_backend() in ("numba", "numpy")
    monkeypatch.setenv(ENV_BACKEND, "granite")
    with pytest.raises(ValueError):
        resolve_backend()


def test_explicit_argument_beats_env(monkeypatch):
    monkeypatch.setenv(ENV_BACKEND, "python")
    assert resolve_backend("numpy") == "numpy"


def test_overflow_guard_routes_to_python():
    # 400 contents at multiset size 40 overflows the int64 cell bound, so the
    # machine backends must hand off to the big-integer path; the answer is
    # the number of multisets of size 40 from 400 copies of the zero vector
    contents = [(0,)] * 400
    expected = comb(400 + 40 - 1, 40)
    assert expected >= 2**62  # the guard really is exercised
    assert count_capped_multisets(contents, 40, (0,), backend="numpy") == expected


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        count_capped_multisets([(1,)], -1, (1,))
    with pytest.raises(ValueError):
        count_capped_multisets([(1,)], 1, (-1,))
