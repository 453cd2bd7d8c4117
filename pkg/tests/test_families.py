"""Tests for the analytic family formulas and the sweep table."""

import numpy as np
import pytest

from affinity_discord.errors import (
    InvalidBlochVectorError,
    OutOfRangeError,
    UnknownFamilyError,
)
from affinity_discord.families import (
    bell_diagonal_discord,
    bell_diagonal_hs_discord,
    bell_diagonal_sqrt_data,
    isotropic_discords,
    sweep,
    sweep_to_csv,
    werner_general_discords,
    werner_two_qubit_discords,
)
from affinity_discord.states import bell_diagonal


def random_bell_triple(rng):
    lams = rng.dirichlet(np.ones(4))
    c1 = lams[0] + lams[1] - lams[2] - lams[3]
    c2 = -lams[0] + lams[1] + lams[2] - lams[3]
    c3 = lams[0] - lams[1] + lams[2] - lams[3]
    return c1, c2, c3


# --- Bell-diagonal -------------------------------------------------------------


def test_bell_diagonal_discord_special_points():
    assert bell_diagonal_discord(0.0, 0.0, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert bell_diagonal_discord(-1.0, -1.0, -1.0) == pytest.approx(0.5, abs=1e-15)


def test_bell_diagonal_discord_werner_line():
    for p in np.linspace(-1 / 3, 1, 11):
        expected = (1 + p - np.sqrt(max((1 - p) * (1 + 3 * p), 0.0))) / 4.0
        assert bell_diagonal_discord(-p, -p, -p) == pytest.approx(expected, abs=1e-12)


def test_bell_diagonal_rejects_invalid_triple():
    with pytest.raises(InvalidBlochVectorError):
        bell_diagonal_discord(1.0, 1.0, 1.0)


def test_sqrt_data_reconstructs_square_root():
    rng = np.random.default_rng(120)
    for _ in range(8):
        c1, c2, c3 = random_bell_triple(rng)
        data = bell_diagonal_sqrt_data(c1, c2, c3)
        state = bell_diagonal(c1, c2, c3)
        root = data.reconstruct_sqrt()
        assert np.max(np.abs(root @ root - state.rho)) < 1e-10
        assert np.max(np.abs(root - state.sqrt())) < 1e-7


def test_sqrt_data_trace_is_h():
    data = bell_diagonal_sqrt_data(0.3, -0.2, 0.5)
    assert np.trace(data.reconstruct_sqrt()).real == pytest.approx(data.h, abs=1e-12)
    assert np.sum(data.lambdas) == pytest.approx(1.0, abs=1e-12)


def test_bell_diagonal_hs_values():
    # Werner line reproduces p^2/2
    for p in (0.2, 0.7):
        assert bell_diagonal_hs_discord(-p, -p, -p) == pytest.approx(p * p / 2.0)
    assert bell_diagonal_hs_discord(0.0, 0.0, 0.0) == 0.0


# --- two-qubit Werner ------------------------------------------------------------


def test_werner_two_qubit_endpoints():
    assert werner_two_qubit_discords(0.0) == (pytest.approx(0.0), pytest.approx(0.0))
    aff, hs = werner_two_qubit_discords(1.0)
    assert aff == pytest.approx(0.5, abs=1e-12)
    assert hs == pytest.approx(0.5, abs=1e-12)


def test_werner_two_qubit_half():
    aff, hs = werner_two_qubit_discords(0.5)
    assert aff == pytest.approx((1.5 - np.sqrt(0.5 * 2.5)) / 4.0, abs=1e-15)
    assert hs == pytest.approx(0.125, abs=1e-15)


def test_werner_two_qubit_out_of_range():
    with pytest.raises(OutOfRangeError):
        werner_two_qubit_discords(-0.5)


def test_werner_two_qubit_agrees_with_bell_diagonal():
    for p in np.linspace(-1 / 3, 1, 7):
        aff, _ = werner_two_qubit_discords(p)
        assert abs(aff - bell_diagonal_discord(-p, -p, -p)) < 1e-12


def test_werner_two_qubit_affinity_monotone_on_unit_interval():
    vals = [werner_two_qubit_discords(p)[0] for p in np.linspace(0.0, 1.0, 41)]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


# --- general Werner ---------------------------------------------------------------


@pytest.mark.parametrize("m", [2, 3, 4])
def test_werner_general_zero_point(m):
    aff, hs = werner_general_discords(m, 1.0 / m)
    assert abs(aff) < 1e-12 and abs(hs) < 1e-12


def test_werner_general_m2_maps_to_two_qubit_form():
    # flip parameter x corresponds to mixing weight p via x = (1 - 3p) / 2
    for p in np.linspace(-1 / 3, 1, 9):
        x = (1.0 - 3.0 * p) / 2.0
        aff_x, hs_x = werner_general_discords(2, x)
        aff_p, hs_p = werner_two_qubit_discords(p)
        assert abs(aff_x - aff_p) < 1e-12
        assert abs(hs_x - hs_p) < 1e-12


def test_werner_general_endpoint():
    aff, _ = werner_general_discords(2, -1.0)
    assert aff == pytest.approx(0.5, abs=1e-12)


def test_werner_general_large_m_limit():
    for x in (0.2, 0.5, 0.9):
        aff, hs = werner_general_discords(64, x)
        assert abs(aff - 0.5 * (1.0 - np.sqrt(1.0 - x * x))) < 0.05
        assert hs < 0.02  # HS value decays with dimension


def test_werner_general_out_of_range():
    with pytest.raises(OutOfRangeError):
        werner_general_discords(1, 0.0)
    with pytest.raises(OutOfRangeError):
        werner_general_discords(3, 1.5)


# --- isotropic ---------------------------------------------------------------------


@pytest.mark.parametrize("m", [2, 3, 4])
def test_isotropic_zero_point(m):
    aff, hs = isotropic_discords(m, 1.0 / m**2)
    assert abs(aff) < 1e-12 and abs(hs) < 1e-12


def test_isotropic_pure_point():
    aff, _ = isotropic_discords(2, 1.0)
    assert aff == pytest.approx(0.5, abs=1e-12)


def test_isotropic_m2_matches_bell_diagonal_reduction():
    # the m=2 isotropic state is Bell diagonal with c = t * (1, -1, 1),
    # t = (4x - 1) / 3
    for x in np.linspace(0.0, 1.0, 9):
        t = (4.0 * x - 1.0) / 3.0
        aff, hs = isotropic_discords(2, x)
        assert abs(aff - bell_diagonal_discord(t, -t, t)) < 1e-12
        assert abs(hs - bell_diagonal_hs_discord(t, -t, t)) < 1e-12


def test_isotropic_large_m_limits():
    for x in (0.2, 0.5, 0.9):
        aff, hs = isotropic_discords(64, x)
        assert abs(aff - x) < 0.05
        assert abs(hs - x * x) < 0.05


def test_isotropic_literal_exponent_flag():
    normative = isotropic_discords(3, 0.7)[1]
    literal = isotropic_discords(3, 0.7, literal_hs_exponent=True)[1]
    assert normative != literal
    assert normative == pytest.approx((9 * 0.7 - 1.0) ** 2 / (3 * 2 * 16))
    assert literal == pytest.approx((9 * 0.7 - 1.0) / (3 * 2 * 16))


def test_isotropic_out_of_range():
    with pytest.raises(OutOfRangeError):
        isotropic_discords(2, -0.1)


# --- sweep ------------------------------------------------------------------------


def test_sweep_structure_and_gaps():
    params = np.linspace(-1 / 3, 1, 5)
    rows = sweep("werner2", params, seed=0)
    assert len(rows) == 10
    assert [r.measure for r in rows[:2]] == ["affinity", "hs"]
    for row in rows:
        assert row.gap is not None and row.gap < 1e-5


def test_sweep_analytic_only():
    rows = sweep("isotropic", [0.25, 0.5], dim=2, optimize=False)
    assert all(row.optimized is None and row.gap is None for row in rows)


def test_sweep_belldiag_triples():
    rng = np.random.default_rng(121)
    triples = [random_bell_triple(rng) for _ in range(2)]
    rows = sweep("belldiag", triples, measures=("affinity",), seed=1)
    assert len(rows) == 2
    for row in rows:
        assert row.gap < 1e-5


def test_sweep_unknown_family_and_missing_dim():
    with pytest.raises(UnknownFamilyError):
        sweep("ghz", [0.1])
    with pytest.raises(OutOfRangeError):
        sweep("werner", [0.1])


def test_sweep_csv_format():
    rows = sweep("werner2", [0.0, 1.0], measures=("affinity",), optimize=False)
    text = sweep_to_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "family,param,measure,analytic,optimized,gap"
    assert len(lines) == 3
    assert lines[1].startswith("werner2,0,affinity,0,")
    assert lines[2].startswith("werner2,1,affinity,0.5,")
