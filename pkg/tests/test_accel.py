"""Tests for the batch coefficient-matrix kernels and backend selection."""

import random
import subprocess
import sys

import numpy as np
import pytest

from perffield import _accel
from perffield.fqtower import make_field


def random_rows(rng, count, n, p):
    return np.array(
        [[rng.randrange(p) for _ in range(n)] for _ in range(count)],
        dtype=np.int64,
    )


def test_reduction_table_f4():
    # t^2 mod (t^2 + t + 1) = t + 1
    red = _accel.reduction_table((1, 1, 1), 2)
    assert red.shape == (1, 2)
    assert red.tolist() == [[1, 1]]


def test_reduction_table_f16():
    # rows are t^4, t^5, t^6 mod (t^4 + t + 1)
    red = _accel.reduction_table((1, 1, 0, 0, 1), 2)
    assert red.tolist() == [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]


def test_reduction_table_degree_one():
    red = _accel.reduction_table((0, 1), 5)
    assert red.shape == (0, 1)


def test_numpy_matches_scalar_multiplication():
    rng = random.Random(42)
    for p, n in [(2, 5), (3, 4), (13, 2), (5, 1)]:
        fq = make_field(p, n)
        red = _accel.reduction_table(fq.modulus, p)
        A = random_rows(rng, 64, n, p)
        B = random_rows(rng, 64, n, p)
        out = _accel.numpy_batch_mulmod(A, B, red, p)
        for i in range(64):
            a = fq.elem(tuple(int(c) for c in A[i]))
            b = fq.elem(tuple(int(c) for c in B[i]))
            expect = (a * b).coeffs + (0,) * (n - len((a * b).coeffs))
            assert tuple(int(c) for c in out[i]) == expect


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
def test_numba_matches_numpy():
    rng = random.Random(43)
    for p, n in [(2, 5), (3, 4), (13, 2), (5, 1), (2, 16)]:
        fq = make_field(p, n)
        red = _accel.reduction_table(fq.modulus, p)
        A = random_rows(rng, 128, n, p)
        B = random_rows(rng, 128, n, p)
        got_numba = _accel.numba_batch_mulmod(A, B, red, p)
        got_numpy = _accel.numpy_batch_mulmod(A, B, red, p)
        assert np.array_equal(got_numba, got_numpy)


def test_batch_pow_matches_scalar():
    rng = random.Random(44)
    fq = make_field(3, 4)
    red = _accel.reduction_table(fq.modulus, 3)
    A = random_rows(rng, 32, 4, 3)
    for e in (0, 1, 2, 3, 27, 80):
        out = _accel.batch_pow(A, e, red, 3)
        for i in range(32):
            a = fq.elem(tuple(int(c) for c in A[i]))
            expect = (a**e).coeffs
            expect = expect + (0,) * (4 - len(expect))
            assert tuple(int(c) for c in out[i]) == expect


def test_encode_decode_roundtrip():
    for p, n in [(2, 4), (3, 3), (7, 2)]:
        rows = _accel.decode_range(0, p**n, n, p)
        assert rows.shape == (p**n, n)
        enc = _accel.encode_rows(rows, p)
        assert enc.tolist() == list(range(p**n))


def test_backend_name_auto(monkeypatch):
    monkeypatch.delenv("PERFFIELD_BACKEND", raising=False)
    expect = "numba" if _accel.HAVE_NUMBA else "numpy"
    assert _accel.backend_name() == expect


def test_backend_name_forced_numpy(monkeypatch):
    monkeypatch.setenv("PERFFIELD_BACKEND", "numpy")
    assert _accel.backend_name() == "numpy"
    red = _accel.reduction_table((1, 1, 1), 2)
    A = np.array([[0, 1]], dtype=np.int64)
    B = np.array([[1, 1]], dtype=np.int64)
    assert _accel.batch_mulmod(A, B, red, 2).tolist() == [[1, 0]]


def test_backend_name_invalid(monkeypatch):
    monkeypatch.setenv("PERFFIELD_BACKEND", "cuda")
    with pytest.raises(ValueError):
        _accel.backend_name()


def test_backend_env_respected_in_subprocess():
    code = (
        "from perffield._accel import backend_name; print(backend_name())"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "PERFFIELD_BACKEND": "numpy"},
    )
    assert out.stdout.strip() == "numpy"


def test_perfect_check_same_result_on_both_backends(monkeypatch):
    from perffield.fqtower import check_perfect

    fq = make_field(3, 3)
    monkeypatch.setenv("PERFFIELD_BACKEND", "numpy")
    rep_numpy = check_perfect(fq)
    if _accel.HAVE_NUMBA:
        monkeypatch.setenv("PERFFIELD_BACKEND", "numba")
        rep_numba = check_perfect(fq)
        assert rep_numpy == rep_numba
    assert rep_numpy.passed and rep_numpy.order == 3
