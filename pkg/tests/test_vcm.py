import numpy as np
import pytest

import magnonlab as ml
from magnonlab.fits import ScalingSeries
from magnonlab.vcm import classify_slope, fluctuation_quadratic_form
from oracles import builder_states, dense_fluctuation, dense_vcm


@pytest.mark.parametrize("n", [4, 6, 8])
def test_vcm_matches_dense_oracle(n):
    for label, st in builder_states(n):
        got = ml.build_vcm(st).matrix
        want = dense_vcm(st.dense_vector(), n)
        assert np.abs(got - want).max() < 1e-12, label


def test_pauli_pair_examples():
    dicke = ml.dicke_state(8, 4)
    assert abs(ml.pauli_pair_expectation(dicke, "z", 3)) < 1e-14
    assert abs(ml.pauli_pair_expectation(dicke, "x", 2, "x", 7) - 4 / 7) < 1e-14
    vac = ml.all_down(6)
    assert abs(ml.pauli_pair_expectation(vac, "x", 2, "y", 2) - (-1j)) < 1e-14
    assert abs(ml.pauli_pair_expectation(vac, "x", 2, "x", 2) - 1.0) < 1e-14


def test_vacuum_vcm_structure():
    n = 6
    v = ml.build_vcm(ml.all_down(n))
    for l in range(1, n + 1):
        assert abs(v.entry("x", l, "x", l) - 1.0) < 1e-14
        assert abs(v.entry("z", l, "z", l)) < 1e-14
        assert abs(v.entry("x", l, "y", l) - (-1j)) < 1e-14
        for lp in range(l + 1, n + 1):
            assert abs(v.entry("x", l, "x", lp)) < 1e-14
            assert abs(v.entry("z", l, "z", lp)) < 1e-14


def test_product_state_has_no_cross_site_correlations():
    n = 6
    v = ml.build_vcm(ml.product_state(n, 1.1, 0.4)).matrix
    for a in range(3):
        for b in range(3):
            block = v[a * n:(a + 1) * n, b * n:(b + 1) * n]
            off = block - np.diag(np.diag(block))
            assert np.abs(off).max() < 1e-12


def test_emax_examples():
    e, _ = ml.max_eigen(ml.build_vcm(ml.dicke_state(8, 4)))
    assert abs(e - 5.0) < 1e-10
    e, _ = ml.max_eigen(ml.build_vcm(ml.m_magnon_state(10, [0, 0])))
    assert abs(e - 4.8) < 1e-10
    e, _ = ml.max_eigen(ml.build_vcm(ml.all_down(10)))
    assert abs(e - 2.0) < 1e-10


def test_max_eigen_vector_contract():
    vcm = ml.build_vcm(ml.band_state(8, 3))
    e, op = ml.max_eigen(vcm)
    assert abs(op.norm2() - 8) < 1e-9
    assert abs(fluctuation_quadratic_form(vcm, op) - 8 * e) < 1e-9
    # deterministic gauge: repeated runs give the same coefficients
    _, op2 = ml.max_eigen(ml.build_vcm(ml.band_state(8, 3)))
    assert np.abs(op.flat - op2.flat).max() < 1e-12


def test_iterative_eigensolver_agrees_with_dense():
    for st in (ml.dicke_state(8, 4), ml.band_state(10, 5)):
        vcm = ml.build_vcm(st)
        e_dense, _ = ml.max_eigen(vcm, method="dense")
        e_iter, op = ml.max_eigen(vcm, method="iterative")
        assert abs(e_dense - e_iter) < 1e-9
        assert abs(fluctuation_quadratic_form(vcm, op) - st.n_sites * e_iter) < 1e-8


def test_max_eigen_handles_half_filling_degeneracy():
    # the two collective levels cross at N = 2m; e_max must still be right
    for n in (8, 12):
        spec = ml.dicke_spectrum(n, n // 2)
        assert abs(spec.pairs[2][0] - spec.pairs[3][0]) < 1e-15
        e, _ = ml.max_eigen(ml.build_vcm(ml.dicke_state(n, n // 2)))
        assert abs(e - spec.emax()) < 1e-10


@pytest.mark.parametrize("n", [4, 8, 12])
def test_ghz_total_sz_fluctuation(n):
    ghz = ml.ghz_state(n)
    op = ml.AdditiveOperator.uniform(n, "z")
    assert abs(ml.additive_fluctuation(ghz, op) - n ** 2) < 1e-10


def test_vacuum_total_sz_fluctuation_vanishes():
    vac = ml.all_down(8)
    assert abs(ml.additive_fluctuation(vac, ml.AdditiveOperator.uniform(8, "z"))) < 1e-12


def test_condensate_max_operator_fluctuation():
    st = ml.dicke_state(8, 4)
    op = ml.dicke_max_operator(8)
    assert abs(ml.additive_fluctuation(st, op) - 40.0) < 1e-10


def test_additive_fluctuation_requires_normalization():
    op = ml.AdditiveOperator.uniform(8, "z", value=0.5)
    with pytest.raises(ValueError):
        ml.additive_fluctuation(ml.all_down(8), op)


def test_staggered_operator_fluctuation_matches_quadratic_form():
    st = ml.dicke_state(6, 3)
    op = ml.AdditiveOperator.staggered(6, "z")
    vcm = ml.build_vcm(st)
    direct = ml.additive_fluctuation(st, op)
    assert abs(direct - fluctuation_quadratic_form(vcm, op)) < 1e-9
    assert abs(direct - dense_fluctuation(st.dense_vector(), 6, op)) < 1e-9


def test_additive_fluctuation_agrees_with_quadratic_form_random_ops():
    rng = np.random.default_rng(7)
    for _, st in builder_states(6):
        n = st.n_sites
        vcm = ml.build_vcm(st)
        for _ in range(3):
            c = rng.standard_normal((3, n)) + 1j * rng.standard_normal((3, n))
            op = ml.AdditiveOperator(c).normalized()
            direct = ml.additive_fluctuation(st, op)
            assert abs(direct - fluctuation_quadratic_form(vcm, op)) < 1e-9
            assert abs(direct - dense_fluctuation(st.dense_vector(), n, op)) < 1e-9


def test_random_operators_never_exceed_supremum():
    rng = np.random.default_rng(11)
    for st in (ml.dicke_state(8, 4), ml.band_state(8, 4)):
        vcm = ml.build_vcm(st)
        e_max, _ = ml.max_eigen(vcm)
        c = rng.standard_normal((10_000, 24)) + 1j * rng.standard_normal((10_000, 24))
        c *= np.sqrt(8 / np.sum(np.abs(c) ** 2, axis=1))[:, None]
        quad = np.real(np.einsum("ki,ij,kj->k", c.conj(), vcm.matrix, c))
        assert quad.max() <= 8 * e_max + 1e-6


@pytest.mark.parametrize("n", [6, 8, 10])
def test_vcm_positive_semidefinite(n):
    for label, st in builder_states(n):
        assert ml.build_vcm(st).eigenvalues()[0] >= -1e-9, label


def test_dicke_xx_block_equals_yy_block():
    n = 8
    v = ml.build_vcm(ml.dicke_state(n, 3)).matrix
    assert np.abs(v[0:n, 0:n] - v[n:2 * n, n:2 * n]).max() < 1e-12


@pytest.mark.parametrize("n,m", [(8, 2), (8, 4), (10, 3), (12, 5)])
def test_dicke_zero_mode(n, m):
    evals = ml.build_vcm(ml.dicke_state(n, m)).eigenvalues()
    assert np.min(np.abs(evals)) < 1e-9
    assert np.sum(np.abs(evals) < 1e-9) == 1  # single zero mode for 2 <= m <= N/2


def test_hermitian_parts_of_raising_sum():
    op = ml.dicke_max_operator(8, normalized=False)  # sum_l sigma_+(l)
    re_part, im_part = ml.hermitian_parts(op)
    assert np.allclose(re_part.coeffs[0], 0.5) and np.allclose(re_part.coeffs[1:], 0)
    assert np.allclose(im_part.coeffs[1], 0.5) and np.allclose(im_part.coeffs[0], 0)
    assert np.allclose(im_part.coeffs[2], 0)


def test_hermitian_parts_of_hermitian_operator():
    op = ml.AdditiveOperator.staggered(6, "x")
    re_part, im_part = ml.hermitian_parts(op)
    assert np.abs(re_part.coeffs - op.coeffs).max() == 0
    assert np.abs(im_part.coeffs).max() == 0


def test_hermitian_parts_triangle_bound():
    rng = np.random.default_rng(3)
    st = ml.dicke_state(8, 4)
    for _ in range(5):
        c = rng.standard_normal((3, 8)) + 1j * rng.standard_normal((3, 8))
        op = ml.AdditiveOperator(c).normalized()
        d_op = np.sqrt(ml.additive_fluctuation(st, op))
        parts = []
        for part in ml.hermitian_parts(op):
            if part.norm2() < 1e-12:
                parts.append(0.0)
                continue
            scale = part.norm2() / 8
            parts.append(np.sqrt(ml.additive_fluctuation(st, part.normalized()) * scale))
        assert max(parts) >= d_op / 2 - 1e-12


def test_estimate_p_examples():
    ns = (8, 12, 16, 20)
    cond = ml.estimate_p(ScalingSeries(ns, [1 + n / 2 for n in ns]))
    assert cond.verdict == "p=2"
    w = ml.estimate_p(ScalingSeries(ns, [4 - 4 / n for n in ns]))
    assert w.verdict == "p=1"
    flat = ml.estimate_p(ScalingSeries(ns, [2.0] * 4))
    assert abs(flat.slope) < 1e-12 and flat.verdict == "p=1"
    assert abs(flat.p_estimate - 1.0) < 1e-12
    with pytest.raises(ValueError):
        ml.estimate_p(ScalingSeries((8, 10, 12), [1, 2, 3]))


def test_classify_slope_windows():
    assert classify_slope(0.95) == "p=2"
    assert classify_slope(0.15) == "p=1"
    assert classify_slope(0.5) == "indeterminate"
    assert classify_slope(1.4) == "indeterminate"
