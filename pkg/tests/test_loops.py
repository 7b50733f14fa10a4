import numpy as np
import pytest
from scipy.linalg import expm

from circlekit.diffeo import CoverConfig, IntervalArc
from circlekit.errors import BranchError
from circlekit.loops import (
    LoopAlgebraElement,
    LoopElement,
    bracket,
    exp_loop,
    fragment_loop,
    fragment_loop_sequential,
    inverse_loop,
    killing_form,
    log_loop,
    loop_from_csv,
    loop_support,
    loop_to_csv,
    multiply,
    omega,
    precompose,
    su2_generators,
)
from circlekit.periodic import TWO_PI, grid
from circlekit.sampling import random_diffeo, random_loop_algebra, random_supported_diffeo, rng_for

N = 1024
T = grid(N)
COVER = CoverConfig.default()


def test_multiply_identity_and_inverse():
    xi = random_loop_algebra(rng_for(20, 0), 0.4, N)
    g = exp_loop(xi)
    e = LoopElement.identity(N)
    assert np.abs(multiply(g, e).samples - g.samples).max() < 1e-14
    assert np.abs(multiply(g, inverse_loop(g)).samples - np.eye(2)).max() < 1e-10


def test_exp_matches_rodrigues_and_dense_oracle():
    g1, g2, g3 = su2_generators()
    theta = 0.37
    xi = LoopAlgebraElement(np.broadcast_to(theta * g3, (N, 2, 2)).copy())
    u = exp_loop(xi)
    expected = np.cos(theta) * np.eye(2) + np.sin(theta) * g3
    assert np.abs(u.samples - expected).max() < 1e-12
    # dense matrix exponential oracle on a non-constant loop
    eta = random_loop_algebra(rng_for(20, 1), 0.8, N)
    v = exp_loop(eta)
    for k in (0, 117, 800):
        assert np.abs(v.samples[k] - expm(eta.samples[k])).max() < 1e-12


def test_log_exp_roundtrip():
    assert log_loop(LoopElement.identity(N)).norm() == 0.0
    xi = random_loop_algebra(rng_for(21, 0), 0.9, N)
    assert (log_loop(exp_loop(xi)) - xi).norm() < 1e-9


def test_log_branch_error():
    g3 = su2_generators()[2]
    xi = LoopAlgebraElement(np.broadcast_to(np.pi * g3, (N, 2, 2)).copy())
    with pytest.raises(BranchError):
        log_loop(exp_loop(xi))


def test_killing_form_normalization():
    h = np.diag([1.0, -1.0]).astype(complex)
    assert killing_form(h, h) == 2.0
    g1, g2, _ = su2_generators()
    assert killing_form(g1, g1) == pytest.approx(-2.0)
    rng = np.random.default_rng(2)
    x = random_loop_algebra(rng, 1.0, 16).samples[0]
    y = random_loop_algebra(rng, 1.0, 16).samples[0]
    z = random_loop_algebra(rng, 1.0, 16).samples[0]
    assert killing_form(x, y) == pytest.approx(killing_form(y, x), abs=1e-13)
    assert killing_form(x + z, y) == pytest.approx(
        killing_form(x, y) + killing_form(z, y), abs=1e-13
    )


def test_omega_examples():
    g1 = su2_generators()[0]
    const = LoopAlgebraElement(np.broadcast_to(0.3 * g1, (N, 2, 2)).copy())
    xi = random_loop_algebra(rng_for(22, 0), 1.0, N)
    assert abs(omega(xi, const)) < 1e-13
    # xi = cos(t) X, eta = sin(t) X gives <X, X>/2
    x_cos = LoopAlgebraElement(np.cos(T)[:, None, None] * g1)
    x_sin = LoopAlgebraElement(np.sin(T)[:, None, None] * g1)
    assert omega(x_cos, x_sin) == pytest.approx(killing_form(g1, g1) / 2.0, abs=1e-10)


def test_omega_locality():
    rng = rng_for(22, 1)
    b1 = random_supported_diffeo(rng, IntervalArc(0.2, 2.0), 0.5, N).periodic_part.samples
    b2 = random_supported_diffeo(rng, IntervalArc(2.4, 5.0), 0.5, N).periodic_part.samples
    xi = random_loop_algebra(rng, 1.0, N).scaled(b1)
    eta = random_loop_algebra(rng, 1.0, N).scaled(b2)
    assert abs(omega(xi, eta)) < 1e-10


def test_omega_antisymmetry_jacobi_invariance():
    rng = rng_for(22, 2)
    xi, eta, zeta = (random_loop_algebra(rng, 0.5, N) for _ in range(3))
    assert abs(omega(xi, eta) + omega(eta, xi)) < 1e-10
    jac = (
        omega(bracket(xi, eta), zeta)
        + omega(bracket(eta, zeta), xi)
        + omega(bracket(zeta, xi), eta)
    )
    assert abs(jac) < 1e-9
    f = random_diffeo(rng, 0.05, N)
    assert abs(omega(precompose(xi, f), precompose(eta, f)) - omega(xi, eta)) < 1e-8


def test_fragment_loop_identity():
    parts = fragment_loop(LoopElement.identity(N), COVER)
    for p in parts:
        assert p.distance_to_identity().max() == 0.0


def test_fragment_loop_reconstruction_and_supports():
    xi = random_loop_algebra(rng_for(23, 0), 0.05, N)
    g = exp_loop(xi)
    parts = fragment_loop(g, COVER)
    rec = multiply(parts[0], multiply(parts[1], parts[2], None), None)
    assert np.abs(rec.samples - g.samples).max() < 1e-9
    for xi_j, arc in zip(parts, COVER.intervals):
        assert xi_j.distance_to_identity()[~arc.contains(T)].max() < 1e-10
        sup = loop_support(xi_j)
        assert sup == "empty" or arc.contains_arc(sup)
    seq = fragment_loop_sequential(g, COVER)
    agree = max(np.abs(a.samples - b.samples).max() for a, b in zip(parts, seq))
    assert agree < 1e-9


def test_fragment_loop_supported_in_i1():
    rng = rng_for(23, 1)
    window = random_supported_diffeo(rng, COVER.i1, 0.5, N).periodic_part.samples
    window = window / np.abs(window).max()
    xi = random_loop_algebra(rng, 0.05, N).scaled(window)
    parts = fragment_loop(exp_loop(xi), COVER)
    i12 = IntervalArc(COVER.i2.a, COVER.i1.b)
    i13 = IntervalArc(COVER.i1.a, COVER.i3.b - TWO_PI)
    assert parts[1].distance_to_identity()[~i12.contains(T)].max() < 1e-10
    assert parts[2].distance_to_identity()[~i13.contains(T)].max() < 1e-10


def test_disjointly_supported_loops_commute():
    rng = rng_for(24, 0)
    b1 = random_supported_diffeo(rng, IntervalArc(0.2, 2.0), 0.5, N).periodic_part.samples
    b2 = random_supported_diffeo(rng, IntervalArc(2.4, 5.0), 0.5, N).periodic_part.samples
    g1 = exp_loop(random_loop_algebra(rng, 0.3, N).scaled(b1))
    g2 = exp_loop(random_loop_algebra(rng, 0.3, N).scaled(b2))
    assert np.abs(
        multiply(g1, g2, None).samples - multiply(g2, g1, None).samples
    ).max() < 1e-10


def test_loop_csv_roundtrip(tmp_path):
    xi = random_loop_algebra(rng_for(25, 0), 0.4, 64)
    g = exp_loop(xi)
    path = tmp_path / "loop.csv"
    loop_to_csv(g, path)
    back = loop_from_csv(path, kind="group")
    assert np.abs(back.samples - g.samples).max() < 1e-15


def test_invariant_validation():
    bad = np.zeros((N, 2, 2), dtype=complex)
    bad[:, 0, 0] = 1.0  # hermitian with trace, not in su(2)
    with pytest.raises(ValueError):
        LoopAlgebraElement(bad)
    with pytest.raises(ValueError):
        LoopElement(2.0 * np.broadcast_to(np.eye(2, dtype=complex), (N, 2, 2)).copy())


def test_su3_generic_path():
    n = 64
    t = grid(n)
    x = np.zeros((n, 3, 3), dtype=complex)
    x[:, 0, 1] = 0.3 * np.cos(t) + 0.2j * np.sin(t)
    x[:, 1, 0] = -np.conj(x[:, 0, 1])
    x[:, 0, 0] = 0.25j * np.sin(2 * t)
    x[:, 2, 2] = -x[:, 0, 0]
    xi = LoopAlgebraElement(x)
    g = exp_loop(xi)
    eye = np.eye(3)
    assert np.abs(np.conj(np.swapaxes(g.samples, 1, 2)) @ g.samples - eye).max() < 1e-10
    assert np.abs(np.linalg.det(g.samples) - 1.0).max() < 1e-10
    assert (log_loop(g) - xi).norm() < 1e-9
    coroot = np.diag([1.0, -1.0, 0.0]).astype(complex)
    assert killing_form(coroot, coroot) == pytest.approx(2.0)
