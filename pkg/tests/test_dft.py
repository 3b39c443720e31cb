import numpy as np
import pytest

from l1chi import dft_forward, dft_naive


def test_constant_to_delta():
    out = dft_forward(np.ones(4, dtype=complex))
    assert np.allclose(out, [4, 0, 0, 0], atol=1e-14)
    out = dft_naive(np.ones(4, dtype=complex))
    assert np.allclose(out, [4, 0, 0, 0], atol=1e-14)


def test_delta_to_constant():
    out = dft_forward(np.array([1, 0, 0], dtype=complex))
    assert np.allclose(out, [1, 1, 1], atol=1e-14)


def test_single_element_identity():
    z = np.array([2.5 - 1.25j])
    assert np.array_equal(dft_naive(z), z)
    assert np.array_equal(dft_forward(z), z)


def test_forward_matches_naive_all_lengths():
    rng = np.random.default_rng(2024)
    for m in range(1, 513):
        v = rng.normal(size=m) + 1j * rng.normal(size=m)
        fast = dft_forward(v)
        slow = dft_naive(v)
        scale = np.max(np.abs(slow))
        assert np.max(np.abs(fast - slow)) <= 1e-11 * scale, m


def test_sign_convention_is_negative_exponent():
    # X[1] of the unit impulse at k=1 must be exp(-2 pi i / m)
    m = 8
    v = np.zeros(m, dtype=complex)
    v[1] = 1.0
    out = dft_forward(v)
    assert out[1] == pytest.approx(np.exp(-2j * np.pi / m), abs=1e-15)


def test_parseval():
    rng = np.random.default_rng(97)
    v = rng.normal(size=97) + 1j * rng.normal(size=97)
    out = dft_naive(v)
    lhs = np.sum(np.abs(out) ** 2)
    rhs = 97 * np.sum(np.abs(v) ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-12)
    out_fast = dft_forward(v)
    assert np.sum(np.abs(out_fast) ** 2) == pytest.approx(rhs, rel=1e-11)


def test_linearity():
    rng = np.random.default_rng(5)
    for m in (16, 45):
        u = rng.normal(size=m) + 1j * rng.normal(size=m)
        v = rng.normal(size=m) + 1j * rng.normal(size=m)
        a, b = 1.7 - 0.3j, -2.2 + 1.1j
        lhs = dft_forward(a * u + b * v)
        rhs = a * dft_forward(u) + b * dft_forward(v)
        scale = np.max(np.abs(rhs))
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


def test_real_input_conjugate_symmetry():
    rng = np.random.default_rng(8)
    for m in (31, 64, 210):
        v = rng.normal(size=m).astype(complex)
        out = dft_forward(v)
        for t in range(1, m):
            assert out[m - t] == pytest.approx(np.conj(out[t]), abs=1e-12 * np.max(np.abs(out)))


def test_invalid_inputs():
    with pytest.raises(ValueError):
        dft_forward(np.array([], dtype=complex))
    with pytest.raises(ValueError):
        dft_forward(np.array([1.0, np.nan]))
    with pytest.raises(ValueError):
        dft_forward(np.array([1.0, np.inf]))
    with pytest.raises(ValueError):
        dft_naive(np.zeros(4097, dtype=complex))
