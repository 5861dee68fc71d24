import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noonlab.analysis import classical_predictions
from noonlab.schwinger import Axis, RotationSpec, change_basis, rotate
from noonlab.sphere import (
    SphereGrid,
    grid_csv_lines,
    heatmap_bytes,
    husimi_grid,
    render_heatmap,
    su2_coherent_overlap,
)
from noonlab.states import Basis, build_eta_state, fock_state, from_amplitudes, noon_state


def test_overlap_at_poles():
    for n in (1, 4, 30):
        assert abs(su2_coherent_overlap(fock_state(n, 0), 0.0, 0.3)) == pytest.approx(1.0)
        assert abs(su2_coherent_overlap(fock_state(n, 0), math.pi, 0.3)) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("n", [2, 5, 8])
def test_noon_overlap_on_equator(n):
    # two terms of magnitude 2^-(N+1)/2 each; in phase they add to sqrt(2) 2^-N/2
    phis = np.linspace(0, 2 * math.pi, 4001)
    mags = [abs(su2_coherent_overlap(noon_state(n), math.pi / 2, p)) for p in phis]
    assert max(mags) == pytest.approx(math.sqrt(2) * 0.5 ** (n / 2), rel=1e-9)
    assert min(mags) == pytest.approx(0.0, abs=1e-6)


def test_grid_shape_and_pole_maximum():
    n = 12
    g = husimi_grid(fock_state(n, 0), 181, 361)
    assert g.values.shape == (181, 361)
    i, _ = np.unravel_index(np.argmax(g.values), g.values.shape)
    assert i == 0
    assert g.values.max() == pytest.approx((n + 1) / (4 * math.pi))
    assert g.theta[0] == 0 and g.theta[-1] == math.pi
    assert g.phi[-1] < 2 * math.pi
    with pytest.raises(ValueError):
        husimi_grid(fock_state(n, 0), 1, 10)


@settings(max_examples=15, deadline=None)
@given(n=st.integers(1, 50), seed=st.integers(0, 2**16), basis=st.sampled_from(list(Basis)))
def test_normalization_random_states(n, seed, basis):
    rng = np.random.default_rng(seed)
    s = from_amplitudes(n, rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1), basis)
    g = husimi_grid(s, 181, 361)
    assert g.values.min() >= 0
    assert g.integral() == pytest.approx(1.0, abs=0.01)


@pytest.mark.parametrize("k", [1, 45, 200])
def test_rotation_covariance(k):
    s = change_basis(build_eta_state(14, 2.7), Basis.PATH)
    phi0 = 2 * math.pi * k / 361
    moved = husimi_grid(rotate(s, RotationSpec(Axis.J3, phi0)), 91, 361)
    base = husimi_grid(s, 91, 361)
    np.testing.assert_allclose(moved.values, np.roll(base.values, k, axis=1), atol=1e-12)


@pytest.mark.parametrize("eta", [0.4, 1.5, 2.0, 3.0, 50.0])
def test_mirror_symmetry(eta):
    g = husimi_grid(change_basis(build_eta_state(16, eta), Basis.PATH), 91, 180)
    mirrored = g.values[::-1][:, (-np.arange(180)) % 180]
    np.testing.assert_allclose(g.values, mirrored, atol=1e-10)


def _lobe_rows(grid):
    half = grid.theta_count // 2
    upper = np.unravel_index(np.argmax(grid.values[: half + 1]), grid.values[: half + 1].shape)[0]
    lower = half + np.unravel_index(np.argmax(grid.values[half:]), grid.values[half:].shape)[0]
    return upper, lower


def test_noon_point_lobes_at_poles():
    g = husimi_grid(change_basis(build_eta_state(20, 2.0), Basis.PATH), 181, 361)
    upper, lower = _lobe_rows(g)
    assert upper <= 2 and lower >= 178


def test_afternoon_lobe_latitude():
    n, eta = 20, 3.0
    g = husimi_grid(change_basis(build_eta_state(n, eta), Basis.PATH), 181, 361)
    branch = classical_predictions(n, eta).j3_branch
    row = round(math.degrees(math.acos(branch / (n / 2))))
    upper, lower = _lobe_rows(g)
    assert abs(upper - row) <= 2
    assert abs(lower - (180 - row)) <= 2


def test_heatmap_format(tmp_path):
    g = husimi_grid(change_basis(build_eta_state(6, 2.0), Basis.PATH), 181, 361)
    data = heatmap_bytes(g)
    header = b"P6\n361 181\n255\n"
    assert data.startswith(header)
    assert len(data) == len(header) + 361 * 181 * 3
    path = render_heatmap(g, tmp_path / "q.ppm")
    assert path.read_bytes() == data == heatmap_bytes(g)


def test_constant_grid_is_uniform():
    theta = np.linspace(0, math.pi, 4)
    phi = np.arange(5) * 2 * math.pi / 5
    g = SphereGrid(3, Basis.PATH, theta, phi, np.full((4, 5), 0.2))
    body = heatmap_bytes(g)[len(b"P6\n5 4\n255\n"):]
    assert len(set(body[i : i + 3] for i in range(0, len(body), 3))) == 1


def test_render_to_bad_path(tmp_path):
    g = husimi_grid(fock_state(2, 0), 3, 4)
    with pytest.raises(OSError):
        render_heatmap(g, tmp_path / "missing" / "q.ppm")


def test_grid_csv():
    g = husimi_grid(fock_state(3, 1), 3, 4)
    lines = list(grid_csv_lines(g))
    assert lines[0] == "theta,phi,q"
    assert len(lines) == 1 + 12
    assert lines[1].startswith("0,0,")
    assert lines[5].startswith(f"{g.theta[1]:.17g},0,")
