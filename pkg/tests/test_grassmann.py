"""Principal angles, distances and bounds on the Grassmannian."""
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from grasspack.grassmann import (BoundReport, DistancePair, GrassmannError,
                                 PrincipalAngleSet, SubspaceProjector,
                                 as_fraction, chordal_sq_trace, distance_pair,
                                 format_value, orthoplex_bound,
                                 principal_angles, product_distance,
                                 simplex_bound)


def random_subspace(rng, n, m):
    a = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    return SubspaceProjector.from_basis(a)


def random_unitary(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


# ------------------------------------------------------------ projectors


def test_projector_validation():
    with pytest.raises(GrassmannError):
        SubspaceProjector(np.array([[0.5, 0.4], [0.4, 0.5]]) + 0.1)
    with pytest.raises(GrassmannError):
        SubspaceProjector(np.array([[1.0, 0.2], [0.0, 0.0]]))
    p = SubspaceProjector(np.diag([1.0, 1.0, 0.0]))
    assert (p.n, p.m) == (3, 2)


def test_from_basis_orthonormalizes():
    rng = np.random.default_rng(0)
    cols = rng.standard_normal((5, 2)) * 3.0
    p = SubspaceProjector.from_basis(cols)
    assert p.m == 2
    b = p.basis
    assert np.abs(b.conj().T @ b - np.eye(2)).max() < 1e-12


def test_basis_recovered_from_spectrum():
    rng = np.random.default_rng(1)
    p = random_subspace(rng, 6, 3)
    q = SubspaceProjector(p.projector)          # no basis given
    b = q.basis
    assert np.abs(b @ b.conj().T - p.projector).max() < 1e-9


def test_basis_mismatch_rejected():
    with pytest.raises(GrassmannError):
        SubspaceProjector(np.diag([1.0, 0.0]),
                          basis=np.array([[0.0], [1.0]]))


# ---------------------------------------------------------------- angles


def test_identical_subspaces_zero_angles():
    rng = np.random.default_rng(2)
    p = random_subspace(rng, 5, 2)
    ang = principal_angles(p, p)
    assert max(ang.sin_sq) < 1e-12
    assert chordal_sq_trace(p, p) < 1e-9


def test_orthogonal_subspaces_right_angles():
    p = SubspaceProjector(np.diag([1.0, 1.0, 0.0, 0.0]))
    q = SubspaceProjector(np.diag([0.0, 0.0, 1.0, 1.0]))
    ang = principal_angles(p, q)
    assert ang.sin_sq == (1.0, 1.0)
    assert abs(chordal_sq_trace(p, q) - 2.0) < 1e-12
    assert product_distance(ang) == 1.0


def test_dimension_and_ambient_mismatch():
    p = SubspaceProjector(np.diag([1.0, 0.0, 0.0]))
    q = SubspaceProjector(np.diag([1.0, 1.0, 0.0]))
    r = SubspaceProjector(np.diag([1.0, 0.0]))
    with pytest.raises(GrassmannError):
        principal_angles(p, q)
    with pytest.raises(GrassmannError):
        principal_angles(p, r)
    with pytest.raises(GrassmannError):
        chordal_sq_trace(p, r)


def test_known_plane_angle():
    # plane pair with an exact 30-degree angle: sin^2 = 1/4
    c, s = np.cos(np.pi / 6), np.sin(np.pi / 6)
    p = SubspaceProjector.from_basis(np.array([[1.0], [0.0]]))
    q = SubspaceProjector.from_basis(np.array([[c], [s]]))
    ang = principal_angles(p, q)
    assert abs(ang.sin_sq[0] - 0.25) < 1e-12


@settings(deadline=None, max_examples=60)
@given(st.integers(0, 2 ** 32 - 1), st.integers(3, 8), st.integers(1, 3))
def test_trace_equals_angle_sum(seed, n, m):
    m = min(m, n - 1)
    rng = np.random.default_rng(seed)
    a, b = random_subspace(rng, n, m), random_subspace(rng, n, m)
    ang = principal_angles(a, b)
    assert abs(ang.chordal_sq() - chordal_sq_trace(a, b)) < 1e-8


@settings(deadline=None, max_examples=40)
@given(st.integers(0, 2 ** 32 - 1))
def test_unitary_invariance(seed):
    rng = np.random.default_rng(seed)
    n, m = 6, 2
    a, b = random_subspace(rng, n, m), random_subspace(rng, n, m)
    u = random_unitary(rng, n)
    ua = SubspaceProjector(u @ a.projector @ u.conj().T)
    ub = SubspaceProjector(u @ b.projector @ u.conj().T)
    before = principal_angles(a, b).sin_sq
    after = principal_angles(ua, ub).sin_sq
    assert max(abs(x - y) for x, y in zip(before, after)) < 1e-8


@settings(deadline=None, max_examples=40)
@given(st.integers(0, 2 ** 32 - 1))
def test_symmetry(seed):
    rng = np.random.default_rng(seed)
    a, b = random_subspace(rng, 5, 2), random_subspace(rng, 5, 2)
    assert abs(chordal_sq_trace(a, b) - chordal_sq_trace(b, a)) < 1e-10
    assert principal_angles(a, b).matches(principal_angles(b, a), tol=1e-10)


@settings(deadline=None, max_examples=40)
@given(st.integers(0, 2 ** 32 - 1), st.integers(2, 4))
def test_chordal_range_and_pair(seed, m):
    rng = np.random.default_rng(seed)
    n = 2 * m + 1
    a, b = random_subspace(rng, n, m), random_subspace(rng, n, m)
    d = distance_pair(a, b)
    assert isinstance(d, DistancePair)
    assert -1e-12 <= d.d_c_sq <= m + 1e-12
    assert 0.0 <= d.d_tilde <= 1.0 + 1e-12


def test_product_distance_zero_cutoff():
    ang = PrincipalAngleSet((1e-22, 0.5))
    assert product_distance(ang) == 0.0
    ang2 = PrincipalAngleSet((0.25, 0.25))
    assert abs(product_distance(ang2) - 0.25) < 1e-12


def test_angle_set_validation_and_sorting():
    a = PrincipalAngleSet((0.9, 0.1))
    assert a.sin_sq == (0.1, 0.9)
    with pytest.raises(GrassmannError):
        PrincipalAngleSet((1.5,))


# ---------------------------------------------------------------- bounds


def test_simplex_bound_values():
    b = simplex_bound(3, 1, 4)
    assert abs(b.value - 8 / 9) < 1e-12
    assert b.attainable
    b = simplex_bound(2673, 990, 12)
    assert abs(b.value - 680.0) < 1e-9
    assert b.attainable
    # very large N approaches m(n-m)/n
    assert abs(simplex_bound(6, 3, 10 ** 9).value - 1.5) < 1e-6


def test_simplex_attainability_flag():
    assert simplex_bound(3, 1, 6).attainable       # binom(4,2) = 6
    assert not simplex_bound(3, 1, 7).attainable


def test_simplex_bound_degenerate():
    with pytest.raises(GrassmannError):
        simplex_bound(3, 3, 4)
    with pytest.raises(GrassmannError):
        simplex_bound(3, 1, 1)


def test_orthoplex_bound():
    b = orthoplex_bound(4, 2, 18)
    assert b.value == 1.0
    assert b.attainable                 # 18 > 10
    assert orthoplex_bound(4, 2, 10).attainable is False
    assert orthoplex_bound(4, 2).attainable is None
    assert abs(orthoplex_bound(8, 4).value - 2.0) < 1e-12


def test_simplex_exceeds_orthoplex():
    for n, m, big_n in [(4, 2, 18), (7, 1, 28), (16, 5, 12)]:
        assert simplex_bound(n, m, big_n).value > orthoplex_bound(n, m).value


# ------------------------------------------------------------- rationals


def test_as_fraction():
    assert as_fraction(8 / 9) == Fraction(8, 9)
    assert as_fraction(1 / np.e) is None
    assert as_fraction(680.0) == Fraction(680)
    assert as_fraction(13970 / 23) == Fraction(13970, 23)
    assert as_fraction(np.pi) is None


def test_format_value():
    assert format_value(8 / 9).endswith("8/9")
    assert format_value(2.0).endswith("= 2")
    assert "/" not in format_value(float(np.pi))
