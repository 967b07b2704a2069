"""Unit tests for the nu-function family evaluators."""

import math

import numpy as np
import pytest

from nufunc.errors import DivergentFamily, DomainError
from nufunc.nu import (
    HyperParams,
    StructureFn,
    convergence_domain,
    nu,
    nu_alpha,
    nu_alpha_positive_batch,
    nu_complex_grid,
    nu_general,
    nu_general_detailed,
    nu_general_log,
    nu_on_circle,
    nu_positive_batch,
    pfq_series,
    pfq_series_log,
    rho_continuous,
    rho_discrete,
)
from nufunc.quadrature import QuadSpec

SPEC = QuadSpec()
PLAIN = StructureFn(HyperParams(0, 0))

# Frozen oracle values computed independently with 50-digit arithmetic.
NU_ORACLE = {
    0.15: 0.544602064339404,
    0.25: 0.708817738236737,
    0.5: 1.13446173872999,
    0.7: 1.52987455104958,
    1.0: 2.26653450769985,
    1.5: 4.06570955787085,
}


def test_nu_matches_frozen_oracle():
    for w, ref in NU_ORACLE.items():
        assert nu(w, SPEC).real == pytest.approx(ref, rel=1e-12)


def test_nu_at_zero_is_zero():
    assert nu(0.0, SPEC) == 0j
    assert nu_general(PLAIN, 0j, SPEC) == 0j


def test_nu_complex_conjugate_symmetry():
    w = 0.6 + 0.45j
    assert nu(w.conjugate(), SPEC) == pytest.approx(
        nu(w, SPEC).conjugate(), rel=1e-13
    )


def test_nu_alpha_frozen_oracle_and_reduction():
    assert nu_alpha(1.0, 1.0, SPEC) == pytest.approx(1.18139184334238, rel=1e-12)
    for w in (0.3, 1.0, 2.5):
        assert nu_alpha(w, 0.0, SPEC) == pytest.approx(nu(w, SPEC).real, rel=1e-12)


def test_nu_alpha_shift_derivative_property():
    # d/dz nu(z, alpha) = nu(z, alpha - 1), including through the
    # sign-changing region alpha <= -1.
    h = 1e-4
    z = 1.0
    diff = (nu_alpha(z + h, -0.5, SPEC) - nu_alpha(z - h, -0.5, SPEC)) / (2.0 * h)
    assert diff == pytest.approx(nu_alpha(z, -1.5, SPEC), rel=1e-5)


def test_nu_alpha_domain():
    with pytest.raises(DomainError):
        nu_alpha(0.0, 0.5, SPEC)
    with pytest.raises(DomainError):
        nu_alpha(-1.0, 0.5, SPEC)


def test_convergence_classification():
    assert convergence_domain(StructureFn(HyperParams(0, 0))).kind == "entire"
    assert convergence_domain(StructureFn(HyperParams(1, 2, (1.0,), (2.0, 3.0)))).kind == "entire"
    assert convergence_domain(StructureFn(HyperParams(1, 0, (2.0,)))).kind == "unit_disc"
    assert convergence_domain(StructureFn(HyperParams(2, 0, (1.0, 1.0)))).kind == "divergent"


def test_divergent_family_rejected():
    sf = StructureFn(HyperParams(2, 0, (1.0, 1.0)))
    with pytest.raises(DivergentFamily):
        nu_general(sf, 0.5, SPEC)


def test_unit_disc_family_boundary():
    sf = StructureFn(HyperParams(1, 0, (2.0,)))
    with pytest.raises(DomainError):
        nu_general(sf, 1.0, SPEC)
    with pytest.raises(DomainError):
        nu_general(sf, 1.2, SPEC)


def test_unit_disc_family_closed_form():
    # For p=1, q=0, a=(2,) the structure function is 1/(E+1), so
    # nu(w) = integral of (E+1) w^E dE = 1/ln(1/w)^2 + 1/ln(1/w).
    sf = StructureFn(HyperParams(1, 0, (2.0,)))
    for w in (0.2, 0.5, 0.8):
        L = -math.log(w)
        expected = 1.0 / (L * L) + 1.0 / L
        assert nu_general(sf, w, SPEC).real == pytest.approx(expected, rel=1e-11)


def test_general_family_value_against_brute_force():
    # (1,1) family on a log-spaced trapezoid oracle.
    sf = StructureFn(HyperParams(1, 1, (1.0,), (2.0,)))
    w = 1.3
    E = np.linspace(1e-9, 80.0, 400001)
    integrand = np.exp(E * math.log(w) - sf.log_rho_continuous(E))
    ref = float(np.sum(0.5 * (integrand[1:] + integrand[:-1]) * np.diff(E)))
    assert nu_general(sf, w, SPEC).real == pytest.approx(ref, rel=1e-7)


def test_structure_function_discrete_continuous_agreement():
    sf = StructureFn(HyperParams(1, 1, (1.5,), (2.5,)))
    for n in range(8):
        assert rho_discrete(sf, n).log_abs == pytest.approx(
            rho_continuous(sf, float(n)).log_abs, abs=1e-10
        )


def test_hyperparams_validation():
    with pytest.raises(DomainError):
        HyperParams(1, 0, (), ())
    with pytest.raises(DomainError):
        HyperParams(1, 0, (-1.0,), ())
    with pytest.raises(DomainError):
        HyperParams(0, 1, (), (0.0,))


def test_pfq_exponential_family():
    for w in np.linspace(0.0, 5.0, 11):
        assert pfq_series(HyperParams(0, 0), w).real == pytest.approx(
            math.exp(w), rel=1e-12
        )


def test_pfq_confluent_closed_form():
    params = HyperParams(1, 1, (1.0,), (2.0,))
    for w in (1.3, 2.0, -3.0):
        expected = (math.exp(w) - 1.0) / w
        assert pfq_series(params, w).real == pytest.approx(expected, rel=1e-12)


def test_pfq_series_log_large_argument():
    assert pfq_series_log(HyperParams(0, 0), 800.0) == pytest.approx(800.0, rel=1e-12)


def test_nu_general_log_matches_linear_scale():
    assert nu_general_log(PLAIN, 2.0, SPEC) == pytest.approx(
        math.log(nu(2.0, SPEC).real), rel=1e-12
    )
    # Far beyond linear range: nu(w) ~ e^w, so the log sits just under w.
    val = nu_general_log(PLAIN, 600.0, SPEC)
    assert 590.0 < val < 600.0


def test_positive_batch_matches_scalar():
    ws = np.array([0.1, 1.0, 10.0, 50.0])
    batch = nu_positive_batch(PLAIN, ws, SPEC)
    for w, v in zip(ws, batch):
        assert v == pytest.approx(nu(float(w), SPEC).real, rel=1e-11)


def test_alpha_batch_matches_scalar():
    ws = np.array([0.2, 1.0, 3.0])
    for alpha in (1.0, -0.25):
        batch = nu_alpha_positive_batch(ws, alpha, SPEC)
        for w, v in zip(ws, batch):
            assert v == pytest.approx(nu_alpha(float(w), alpha, SPEC), rel=1e-10)


def test_nu_on_circle_matches_pointwise():
    phases = np.array([0.0, 0.9, -0.9, 2.5, math.pi, 4.0])
    vals = nu_on_circle(0.8, phases, PLAIN, SPEC)
    for phi, v in zip(phases, vals):
        w = 0.8 * complex(math.cos(phi), math.sin(phi))
        assert v == pytest.approx(nu(w, SPEC), rel=1e-9, abs=1e-11)
    # Conjugate phases give conjugate values exactly.
    assert vals[2] == pytest.approx(vals[1].conjugate(), rel=1e-13)


def test_nu_complex_grid_matches_pointwise():
    moduli = np.array([0.0, 0.3, 0.9])
    phases = np.array([0.5, 2.0, 4.0])
    grid = nu_complex_grid(PLAIN, moduli, phases, SPEC)
    assert np.all(grid[0] == 0.0)
    for j, r in enumerate(moduli[1:], start=1):
        for k, phi in enumerate(phases):
            w = r * complex(math.cos(phi), math.sin(phi))
            assert grid[j, k] == pytest.approx(nu(w, SPEC), rel=1e-8, abs=1e-10)


def test_nu_complex_grid_validation():
    with pytest.raises(DomainError):
        nu_complex_grid(PLAIN, np.array([-0.1]), np.array([0.0]), SPEC)
    with pytest.raises(DomainError):
        nu_complex_grid(PLAIN, np.array([[0.5]]), np.array([0.0]), SPEC)


def test_detailed_result_error_accounting():
    res = nu_general_detailed(PLAIN, 1.0, SPEC)
    assert complex(res.value).real == pytest.approx(2.26653450769985, rel=1e-12)
    assert 0.0 <= res.error_estimate < 1e-9
    assert res.panel_count >= 1
