"""Scalar kernel routes, the coupling coefficients, and finite-rank forms."""

import math
import warnings

import numpy as np
import pytest

from pfapart import (
    ConvergenceWarning,
    DomainError,
    PlancherelParams,
    QuadratureSettings,
    ScalarKernel,
    SingularMatrixError,
    ZMeasureParams,
    assemble_k,
    bessel_j,
    difference_matrix,
    e_toeplitz,
    finite_n_kernel,
    finite_n_matrix,
    from_e_coefficients,
    phi_closed_form_z,
    phi_contour,
    pi_plancherel,
    pi_z,
    s_contour,
    s_series,
    upsilon,
    upsilon_bilinear,
    upsilon_bilinear_closed,
)

Z_PARAMS = ZMeasureParams(2.5, 1.5, 2, 0.2)
PL_PARAMS = PlancherelParams(1.0)


# --- coupling coefficients ------------------------------------------------


def test_upsilon_sign_table():
    # k odd, m even, m > k gives -1; k even, m odd, k > m gives +1;
    # everything else vanishes.  Rows k = 1..8, columns m = 1..8.
    expected = [
        [0, -1, 0, -1, 0, -1, 0, -1],
        [1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, -1, 0, -1, 0, -1],
        [1, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, -1, 0, -1],
        [1, 0, 1, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, -1],
        [1, 0, 1, 0, 1, 0, 1, 0],
    ]
    for k in range(1, 9):
        for m in range(1, 9):
            assert upsilon(k, m) == expected[k - 1][m - 1]


def test_upsilon_difference_identity():
    # Upsilon(i+1, j) - Upsilon(i-1, j) = delta_ij with row 0 treated as 0
    for j in range(1, 101):
        for i in range(1, 101):
            above = upsilon(i + 1, j)
            below = upsilon(i - 1, j) if i >= 2 else 0
            assert above - below == (1 if i == j else 0)


def test_upsilon_antisymmetry():
    for k in range(1, 40):
        for m in range(1, 40):
            assert upsilon(k, m) == -upsilon(m, k)


def test_bilinear_closed_rational_point():
    assert upsilon_bilinear_closed(2.0, 3.0) == pytest.approx(0.05)
    assert upsilon_bilinear(2.0, 3.0, truncation=80) == pytest.approx(0.05, abs=1e-12)


def test_bilinear_series_matches_closed_form():
    rng = np.random.default_rng(11)
    for _ in range(12):
        r1, r2 = 1.3 + 1.7 * rng.random(2)
        t1, t2 = 2 * math.pi * rng.random(2)
        w1 = r1 * np.exp(1j * t1)
        w2 = r2 * np.exp(1j * t2)
        series = upsilon_bilinear(w1, w2, truncation=220)
        closed = upsilon_bilinear_closed(w1, w2)
        assert series == pytest.approx(closed, rel=1e-10, abs=1e-12)


def test_bilinear_diagonal_vanishes():
    assert upsilon_bilinear_closed(1.7, 1.7) == 0
    assert abs(upsilon_bilinear(1.7, 1.7, truncation=120)) < 1e-14


def test_bilinear_rejects_unit_disk():
    with pytest.raises(DomainError):
        upsilon_bilinear(0.9, 2.0, truncation=50)
    with pytest.raises(DomainError):
        upsilon_bilinear_closed(2.0, 1.0)


# --- one-sided coefficients ----------------------------------------------


def test_phi_plancherel_is_bessel():
    eta = 1.0
    pi = pi_plancherel(eta)
    u = 2 * math.sqrt(2) * eta
    for k, x in [(1, -1), (1, -3), (3, -1), (2, 4), (1, -6)]:
        got = phi_contour(pi, k, x)
        assert got == pytest.approx(bessel_j(k + x, u), rel=1e-11, abs=1e-13)


def test_phi_depends_only_on_sum():
    pi = pi_z(-2.5, 0.2)
    a = phi_contour(pi, 3, -1)
    b = phi_contour(pi, 1, 1)
    c = phi_contour(pi, 6, -4)
    assert a == pytest.approx(b, rel=1e-12)
    assert a == pytest.approx(c, rel=1e-12)


def test_phi_requires_positive_index():
    with pytest.raises(DomainError):
        phi_contour(pi_plancherel(1.0), 0, 3)


def test_phi_closed_form_matches_contour():
    z, xi = 2.5, 0.2
    pi = pi_z(-z, xi)
    for s in range(-6, 7):
        closed = phi_closed_form_z(z, xi, 1, s - 1)
        quad = phi_contour(pi, 1, s - 1)
        assert closed == pytest.approx(quad, rel=1e-9, abs=1e-12)


# --- scalar kernel routes --------------------------------------------------


def test_quadrature_settings_validation():
    QuadratureSettings(radius=1.5)
    with pytest.raises(DomainError):
        QuadratureSettings(start_nodes=0)
    with pytest.raises(DomainError):
        QuadratureSettings(tol=-1)
    with pytest.raises(DomainError):
        QuadratureSettings(start_nodes=128, max_nodes=64)


def test_scalar_kernel_parameter_validation():
    with pytest.raises(DomainError):
        ScalarKernel(ZMeasureParams(2.5, 1.2, 2, 0.2))  # zp != z - 1
    with pytest.raises(DomainError):
        ScalarKernel(ZMeasureParams(2.5, 1.5, 1, 0.2))  # theta != 2
    with pytest.raises(DomainError):
        ScalarKernel(ZMeasureParams(2.5, 1.5, 2))  # xi unset
    with pytest.raises(DomainError):
        ScalarKernel(Z_PARAMS, route="bogus")
    with pytest.raises(DomainError):
        ScalarKernel(from_e_coefficients([1, 0.5]), route="closed_form")


def test_s_antisymmetric_and_zero_diagonal():
    for params in (Z_PARAMS, PL_PARAMS):
        k = ScalarKernel(params, "contour")
        xs = [-5, -3, -1, 0, 2]
        t = np.asarray(k.table(xs, xs))
        assert np.abs(t + t.T).max() < 1e-10
        assert np.abs(np.diag(t)).max() < 1e-10


def test_z_spot_values_all_routes():
    # values pinned from mutually confirming runs of the three routes
    spots = {
        (-2, -1): 0.6580980285212813,
        (-3, -2): -0.0018868879268411516,
        (-3, -1): 0.00014965458784551983,
    }
    for route in ("contour", "upsilon_series", "closed_form"):
        k = ScalarKernel(Z_PARAMS, route)
        for (x, y), want in spots.items():
            got = k.evaluate(x, y)
            assert got.real == pytest.approx(want, rel=1e-8, abs=1e-11)
            assert abs(got.imag) < 1e-11


def test_plancherel_spot_values_all_routes():
    spots = {
        (-2, -1): 0.37136469017624285,
        (-4, -2): 0.2795437729442768,
        (0, -3): -0.06649998754280256,
    }
    for route in ("contour", "upsilon_series", "closed_form"):
        k = ScalarKernel(PL_PARAMS, route)
        for (x, y), want in spots.items():
            got = k.evaluate(x, y)
            assert got.real == pytest.approx(want, rel=1e-8, abs=1e-11)
            assert abs(got.imag) < 1e-11


def test_routes_agree_on_grid_z():
    xs = list(range(-8, 4))
    kc = ScalarKernel(Z_PARAMS, "contour")
    ks = ScalarKernel(Z_PARAMS, "closed_form")
    ku = ScalarKernel(Z_PARAMS, "upsilon_series")
    a = np.asarray(kc.table(xs, xs))
    b = np.asarray(ks.table(xs, xs))
    c = np.asarray(ku.table(xs, xs))
    assert np.abs(a - b).max() < 1e-9
    assert np.abs(a - c).max() < 1e-9


def test_routes_agree_generic_pi():
    pi = from_e_coefficients([1.0, 0.6, 0.18, 0.03], label="poly3")
    xs = list(range(-6, 3))
    a = np.asarray(ScalarKernel(pi, "contour").table(xs, xs))
    b = np.asarray(ScalarKernel(pi, "upsilon_series").table(xs, xs))
    assert np.abs(a - b).max() < 1e-9


def test_contour_radius_independence():
    k1 = ScalarKernel(Z_PARAMS, "contour", QuadratureSettings(radius=1.4))
    k2 = ScalarKernel(Z_PARAMS, "contour", QuadratureSettings(radius=1.9))
    for x, y in [(-3, -1), (-5, 0), (1, -2)]:
        assert k1.evaluate(x, y) == pytest.approx(k2.evaluate(x, y), rel=1e-9, abs=1e-12)


def test_contour_rejects_radius_outside_annulus():
    with pytest.raises(DomainError):
        ScalarKernel(Z_PARAMS, "contour", QuadratureSettings(radius=0.9)).evaluate(-2, -1)
    with pytest.raises(DomainError):
        ScalarKernel(Z_PARAMS, "contour", QuadratureSettings(radius=2.4)).evaluate(-2, -1)


def test_series_explicit_truncation_converges_monotonically():
    k = ScalarKernel(PL_PARAMS, "upsilon_series")
    ref = complex(s_contour(PL_PARAMS, -3, -1))
    gaps = []
    for K in (16, 64, 256):
        t, err = k.table_with_error([-3], [-1], truncation=K)
        gaps.append(abs(complex(t[0, 0]) - ref))
    assert gaps[2] < 1e-10
    assert gaps[2] <= gaps[0] + 1e-15


def test_module_level_wrappers():
    a = s_contour(Z_PARAMS, -2, -1)
    b = s_series(Z_PARAMS, -2, -1)
    assert complex(a) == pytest.approx(complex(b), rel=1e-9, abs=1e-12)


def test_table_with_error_reports_small_errors():
    k = ScalarKernel(Z_PARAMS, "contour")
    t, err = k.table_with_error([-4, -2], [-3, -1])
    assert t.shape == err.shape == (2, 2)
    assert float(np.nanmax(err)) < 1e-10


# --- 2x2 matrix kernel ------------------------------------------------------


def test_assemble_k_block_structure():
    k = ScalarKernel(PL_PARAMS, "closed_form")
    x, y = -2, -1
    blk = assemble_k(k, x, y)
    s = lambda a, b: complex(k.evaluate(a, b))
    arr = blk.as_array()
    assert arr[0, 0] == pytest.approx(s(x + 1, y + 1), rel=1e-12, abs=1e-15)
    assert arr[0, 1] == pytest.approx(-s(x + 1, y), rel=1e-12, abs=1e-15)
    assert arr[1, 0] == pytest.approx(-s(x, y + 1), rel=1e-12, abs=1e-15)
    assert arr[1, 1] == pytest.approx(s(x, y), rel=1e-12, abs=1e-15)


def test_assemble_k_block_antisymmetry():
    k = ScalarKernel(Z_PARAMS, "closed_form")
    for x, y in [(-3, -1), (-2, 0), (-4, -4)]:
        a = assemble_k(k, x, y).as_array()
        b = assemble_k(k, y, x).as_array()
        assert np.abs(a + b.T).max() < 1e-10


# --- finite rank forms -------------------------------------------------------


def test_finite_n_matrix_exactly_antisymmetric():
    for pi in (pi_z(-2.5, 0.2), pi_plancherel(1.0)):
        m = finite_n_matrix(pi, 12)
        assert m.shape == (24, 24)
        assert np.abs(m + m.T).max() == 0.0


def test_finite_n_matrix_toeplitz_structure():
    pi = pi_plancherel(0.9)
    m = finite_n_matrix(pi, 10)
    for i in range(19):
        for j in range(19):
            assert m[i, j] == pytest.approx(m[i + 1, j + 1], rel=1e-12, abs=1e-15)


def test_finite_n_factorization_interior():
    # M agrees with T D T^t away from the truncation boundary; the
    # truncation error enters through the tail of the e-sequence, which
    # pollutes the bottom-right corner only, so compare the leading block
    pi = pi_plancherel(1.0)
    n = 14
    m = finite_n_matrix(pi, n)
    t = e_toeplitz(pi, 2 * n)
    d = difference_matrix(2 * n)
    prod = t @ d @ t.T
    lead = slice(0, n - 4)
    assert np.abs(m[lead, lead] - prod[lead, lead]).max() < 1e-12


def test_difference_matrix_shape():
    d = difference_matrix(5)
    assert np.array_equal(
        d,
        np.array(
            [
                [0, 1, 0, 0, 0],
                [-1, 0, 1, 0, 0],
                [0, -1, 0, 1, 0],
                [0, 0, -1, 0, 1],
                [0, 0, 0, -1, 0],
            ],
            dtype=float,
        ),
    )


def test_finite_n_kernel_converges_to_contour():
    for params, pi in ((Z_PARAMS, pi_z(-2.5, 0.2)), (PL_PARAMS, pi_plancherel(1.0))):
        ref = complex(s_contour(params, -3, -2))
        gaps = []
        for n in (4, 8, 16):
            gaps.append(abs(complex(finite_n_kernel(pi, n, -3, -2)) - ref))
        assert gaps[2] < 1e-8
        assert gaps[2] < gaps[0]
