import math

import numpy as np
import pytest

from lipgrowth.continuum import (_offset_triple_apply, _pinned_pair_apply,
                                 grid_bound_report, kernel_matrix,
                                 midpoint_mesh, nystrom_top, solve_alpha,
                                 solve_beta, solve_psi, solve_zeta)
from lipgrowth.errors import ResourceLimitError
from lipgrowth.strips import (FreeStripOperator, PinnedStripOperator,
                              extrapolate_limit, top_eigenvalue)


def test_alpha():
    a = solve_alpha()
    assert abs(a - 1.16234) <= 1e-5
    assert abs(a * a - 1.351) <= 1e-3
    assert abs(math.tan(1 / a) - a) <= 1e-9


def test_beta():
    b = solve_beta()
    assert abs(b - 1.554) <= 1e-3
    root = 1.0 / b
    assert abs(root - 0.6435011) <= 1e-6
    assert abs(math.cos(root) + 2 * math.sin(root) - 2) <= 1e-9
    # identity: cos r = 4/5, sin r = 3/5
    assert abs(math.cos(root) - 0.8) <= 1e-9
    assert abs(math.sin(root) - 0.6) <= 1e-9


def test_mesh():
    mesh = midpoint_mesh(100)
    assert np.all(mesh.weights > 0)
    assert mesh.weights.sum() == pytest.approx(2.0)
    assert mesh.nodes[0] == pytest.approx(-1 + 1 / 100)
    with pytest.raises(ValueError):
        midpoint_mesh(4)
    with pytest.raises(ResourceLimitError):
        midpoint_mesh(10**7)


def test_kernel_invariants():
    mesh = midpoint_mesh(64)
    band = kernel_matrix("band-indicator", mesh)
    # interior entries are full cell weights, the boundary cell is halved
    step = 2 / 64
    assert band.max() == pytest.approx(step)
    assert np.any(np.isclose(band, step / 2))
    tent = kernel_matrix("tent", mesh) / mesh.weights[None, :]
    assert tent.min() >= 0
    assert tent.max() == pytest.approx(2.0, abs=step)
    with pytest.raises(ValueError):
        kernel_matrix("gauss", mesh)


def test_nystrom_band():
    beta = solve_beta()
    pair = nystrom_top("band-indicator", 2000)
    assert abs(pair.eigenvalue - beta) <= 5e-4
    # Perron eigenfunction: strictly positive and even
    f = pair.eigenfunction
    assert np.all(f > 0)
    assert np.max(np.abs(f - f[::-1])) <= 1e-6
    assert np.max(np.abs(f)) == pytest.approx(1.0)


def test_nystrom_tent():
    alpha = solve_alpha()
    pair = nystrom_top("tent", 2000)
    assert abs(pair.eigenvalue - 2 * alpha * alpha) <= 5e-4
    # closed-form relation lam = 2/gamma^2 with tan(gamma) = 1/gamma
    gamma = math.sqrt(2.0 / pair.eigenvalue)
    assert abs(math.tan(gamma) - 1 / gamma) <= 1e-4
    # cosine-shaped: even, positive, maximal at the centre
    f = pair.eigenfunction
    n = len(f)
    assert np.all(f > 0)
    assert np.max(np.abs(f - f[::-1])) <= 1e-6
    assert abs(int(np.argmax(f)) - n // 2) <= 1
    ref = np.cos(nodes_of(n) / alpha)
    assert np.max(np.abs(f - ref / ref.max())) <= 1e-3


def nodes_of(n):
    return -1.0 + (np.arange(n) + 0.5) * (2.0 / n)


def test_discrete_continuum_consistency():
    # strip operators at large h agree with the kernel eigenvalues to 1e-2
    beta_pairs = [(h, top_eigenvalue(make_band(h), 1e-12).normalized)
                  for h in (100, 200, 400)]
    band_limit = extrapolate_limit(beta_pairs).limit
    assert abs(band_limit - nystrom_top("band-indicator", 1000).eigenvalue) <= 1e-2

    tent_pairs = [(h, top_eigenvalue(FreeStripOperator(2, h), 1e-12).normalized)
                  for h in (100, 200, 400)]
    tent_limit = extrapolate_limit(tent_pairs).limit
    lam = nystrom_top("tent", 1000).eigenvalue
    assert abs(tent_limit - math.sqrt(lam)) <= 1e-2


def make_band(h):
    from lipgrowth.strips import BandOperator
    return BandOperator(h)


def test_zeta_sweep_matches_naive_quadrature():
    n = 16
    step = 2.0 / n
    nodes = nodes_of(n)
    rng = np.random.default_rng(1)
    b = rng.random((n, n))
    naive = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for u in range(n):
                if abs(nodes[i] - nodes[u]) > 1:
                    continue
                for v in range(n):
                    if abs(nodes[i] + nodes[j] - nodes[u] - nodes[v]) <= 1:
                        acc += b[u, v]
            naive[i, j] = acc * step * step
    assert np.max(np.abs(_pinned_pair_apply(b) - naive)) <= 1e-12


def test_psi_sweep_matches_naive_quadrature():
    n = 16
    step = 2.0 / n
    nodes = nodes_of(n)
    rng = np.random.default_rng(2)
    b = rng.random((n, n))
    naive = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for k in range(n):
                for u in range(n):
                    if abs(nodes[i] - nodes[u] - nodes[k]) > 1:
                        continue
                    for v in range(n):
                        if abs(nodes[i] + nodes[j] - nodes[u] - nodes[v]
                               - nodes[k]) <= 1:
                            acc += b[u, v]
            naive[i, j] = acc * step ** 3
    assert np.max(np.abs(_offset_triple_apply(b) - naive)) <= 1e-12


def test_zeta_value_and_convergence():
    z32, z64, z128 = solve_zeta(32), solve_zeta(64), solve_zeta(128)
    assert abs(z64 - 1.4895) <= 0.02
    # first-order quadrature: successive differences shrink by about half
    assert abs(z128 - z64) <= 0.55 * abs(z64 - z32)


def test_zeta_eigenfunction_posteriori_checks():
    # no symmetry is imposed by the solver; the converged Perron vector is
    # checked afterwards: strictly positive and invariant under full negation
    from lipgrowth.iterate import power_iteration
    n = 48
    _, vec, _, _ = power_iteration(_pinned_pair_apply, np.ones((n, n)), 1e-13)
    assert np.all(vec > 0)
    assert np.max(np.abs(vec - vec[::-1, ::-1])) <= 1e-8


def test_zeta_cross_check_pinned_strip():
    pairs = [(h, top_eigenvalue(PinnedStripOperator(2, h), 1e-12).normalized)
             for h in (10, 15, 20)]
    limit = extrapolate_limit(pairs).limit
    assert abs(solve_zeta(64) - limit) <= 0.02


def test_psi_value_and_bound():
    p32 = solve_psi(32)
    assert abs(p32 - 1.553) <= 0.02
    assert abs(p32 ** 1.5 / math.sqrt(2) - 1.3685) <= 0.02


def test_psi_cross_check_free_strip():
    pairs = [(h, top_eigenvalue(FreeStripOperator(3, h), 1e-12).normalized)
             for h in (10, 15, 20)]
    limit = extrapolate_limit(pairs).limit
    assert abs(solve_psi(32) - limit) <= 0.02


def test_solver_preconditions():
    with pytest.raises(ValueError):
        solve_zeta(8)
    with pytest.raises(ValueError):
        solve_psi(8)
    with pytest.raises(ResourceLimitError):
        solve_psi(8192)


def test_constants_in_growth_window():
    alpha = solve_alpha()
    for value in (alpha * math.sqrt(2), solve_beta(), alpha * alpha,
                  solve_zeta(32), solve_psi(16)):
        assert 1.0 <= value <= 2.0


def test_grid_bound_report():
    gb = grid_bound_report()
    assert gb.lower_base == pytest.approx(1.351, abs=1e-3)
    assert gb.upper_base == pytest.approx(1.554, abs=1e-3)
    assert abs(gb.lower_improved - 1.3685) <= 0.02
    assert abs(gb.upper_improved - 1.4895) <= 0.02
    assert gb.lower_base <= gb.upper_base
    assert gb.lower_improved <= gb.upper_improved
    assert dict(gb.provenance).keys() == {
        "lower_base", "upper_base", "lower_improved", "upper_improved"}
