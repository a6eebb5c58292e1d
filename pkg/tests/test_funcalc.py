import cmath
import math

import numpy as np
import pytest

from matfrob import (
    Abs,
    ConjugateSymmetryError,
    DomainError,
    Exp,
    JordanSpec,
    Monomial,
    NonDifferentiableError,
    NonRealResultError,
    NotDefinedOnSpectrumError,
    NotEntireError,
    Polynomial,
    PrincipalRoot,
    ScaledSum,
    SpectralFunction,
    defined_on_spectrum,
    eigen_decompose,
    extract_diagonalizable_structure,
    func_jordan_block,
    func_real_jordan_block,
    jordan_block,
    matrix_function,
    reflection_check,
    synthesize_matrix,
    taylor_oracle,
)
from matfrob.jordan import block_diag
from matfrob.sampling import random_orthogonal, random_pf_factors

from helpers import assert_multiset_close, differentiable_catalogue, random_domain_points

B = np.array([[2.0, 1.0], [2.0, -1.0]])


class SkewedDerivatives(SpectralFunction):
    """f(z) = i*z: a hand-built function violating conjugate symmetry."""

    def describe(self):
        return "i*z"

    def _eval(self, z):
        return 1j * z

    def _deriv(self, z, order):
        return 1j if order == 1 else 0j


class TestEval:
    def test_exp_at_zero(self):
        assert Exp().eval(0.0) == 1.0

    def test_monomial_complex(self):
        assert Monomial(2).eval(1 + 1j) == 2j

    def test_root_at_four(self):
        assert abs(PrincipalRoot(2).eval(4.0) - 2.0) < 1e-12

    def test_abs(self):
        assert Abs().eval(-3 - 4j) == 5.0

    def test_polynomial_horner(self):
        # 1 + 2z + 3z^2 at z = 2
        assert Polynomial((1.0, 2.0, 3.0)).eval(2.0) == 17.0

    def test_scaled_sum(self):
        f = ScaledSum(((0.5, Exp()), (2.0, Monomial(1))))
        got = f.eval(1.0)
        assert abs(got - (0.5 * math.e + 2.0)) < 1e-12

    def test_principal_branch_odd_root(self):
        # cube root of -8 on the principal branch: 2*exp(i*pi/3)
        got = PrincipalRoot(3).eval(-8.0)
        expected = complex(1.0, math.sqrt(3.0))
        assert abs(got - expected) < 1e-12

    def test_cut_approached_from_above(self):
        # -0.0 imaginary part must not flip onto the lower branch
        a = PrincipalRoot(3).eval(complex(-8.0, 0.0))
        b = PrincipalRoot(3).eval(complex(-8.0, -0.0))
        assert a == b
        assert a.imag > 0


class TestDomains:
    def test_even_root_excludes_nonpositive_reals(self):
        f = PrincipalRoot(2)
        with pytest.raises(DomainError):
            f.eval(-1.0)
        with pytest.raises(DomainError):
            f.eval(0.0)
        assert f.domain.contains(-1 + 1e-6j)

    def test_odd_root_excludes_origin_only(self):
        f = PrincipalRoot(3)
        with pytest.raises(DomainError):
            f.eval(0.0)
        f.eval(-1.0)  # defined, though non-real

    def test_scaled_sum_merges_exclusions(self):
        f = ScaledSum(((1.0, PrincipalRoot(2)), (1.0, Exp())))
        assert not f.domain.contains(-1.0)
        assert f.domain.contains(1.0)

    def test_domain_is_self_conjugate(self):
        for f in differentiable_catalogue():
            for z in (2.0, -1.5, 1 + 2j, -0.5 - 0.5j, 1e-3j):
                assert f.domain.contains(z) == f.domain.contains(np.conj(z))


class TestDeriv:
    def test_exp_any_order(self):
        assert Exp().deriv(0.0, 5) == 1.0

    def test_monomial_first(self):
        assert Monomial(3).deriv(2.0, 1) == 12.0

    def test_monomial_vanishes_past_power(self):
        assert Monomial(3).deriv(2.0, 4) == 0.0

    def test_polynomial_second(self):
        assert Polynomial((1.0, 1.0, 1.0)).deriv(0.0, 2) == 2.0

    def test_root_first(self):
        assert abs(PrincipalRoot(2).deriv(4.0, 1) - 0.25) < 1e-12

    def test_order_zero_is_eval(self):
        assert Exp().deriv(1.5, 0) == Exp().eval(1.5)

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            Exp().deriv(0.0, -1)

    def test_abs_not_differentiable(self):
        with pytest.raises(NonDifferentiableError):
            Abs().deriv(1.0, 1)

    def test_sum_with_abs_not_differentiable(self):
        f = ScaledSum(((1.0, Abs()), (1.0, Exp())))
        with pytest.raises(NonDifferentiableError):
            f.deriv(1.0, 1)

    def test_finite_difference_ladder(self):
        # order-j rule against the order-2 central difference of the
        # order-(j-1) rule, step 1e-5, 1e-6 relative
        rng = np.random.default_rng(17)
        h = 1e-5
        for f in differentiable_catalogue():
            for z in random_domain_points(rng, f, 100):
                for j in (1, 2):
                    fd = (f.deriv(z + h, j - 1) - f.deriv(z - h, j - 1)) / (2 * h)
                    exact = f.deriv(z, j)
                    assert abs(fd - exact) <= 1e-6 * max(1.0, abs(exact))


class TestTaylor:
    def test_exp_coefficients(self):
        c = Exp().taylor_coefficients(6)
        np.testing.assert_allclose(c, [1 / math.factorial(k) for k in range(6)])

    def test_monomial_padding(self):
        np.testing.assert_array_equal(Monomial(2).taylor_coefficients(5), [0, 0, 1, 0, 0])
        np.testing.assert_array_equal(Monomial(7).taylor_coefficients(3), [0, 0, 0])

    def test_polynomial_truncation(self):
        np.testing.assert_array_equal(
            Polynomial((1.0, 2.0, 3.0)).taylor_coefficients(2), [1, 2]
        )

    def test_scaled_sum(self):
        f = ScaledSum(((2.0, Exp()), (1.0, Monomial(1))))
        np.testing.assert_allclose(f.taylor_coefficients(3), [2.0, 3.0, 1.0])

    def test_non_entire_rejected(self):
        with pytest.raises(NotEntireError):
            PrincipalRoot(2).taylor_coefficients(4)
        with pytest.raises(NotEntireError):
            Abs().taylor_coefficients(4)


class TestDefinedOnSpectrum:
    def test_entire_always_works(self):
        spec = JordanSpec(real_blocks=((2.0, 4),), complex_blocks=((1j, 3),))
        assert defined_on_spectrum(Exp(), spec)

    def test_abs_blocked_by_size_two(self):
        spec = JordanSpec(real_blocks=((2.0, 2),))
        check = defined_on_spectrum(Abs(), spec)
        assert not check
        assert check.witness == (2.0 + 0j, 1)

    def test_even_root_blocked_by_negative_real(self):
        spec = JordanSpec(real_blocks=((2.0, 1), (-1.0, 1)))
        check = defined_on_spectrum(PrincipalRoot(2), spec)
        assert not check
        assert check.witness == (-1.0 + 0j, 0)

    def test_odd_root_fine_off_origin(self):
        spec = JordanSpec(real_blocks=((-1.0, 2),))
        assert defined_on_spectrum(PrincipalRoot(3), spec)


class TestFuncJordanBlock:
    def test_exp_at_zero_size3(self):
        got = func_jordan_block(Exp(), 0.0, 3)
        np.testing.assert_allclose(got.real, [[1, 1, 0.5], [0, 1, 1], [0, 0, 1]])
        assert np.all(got.imag == 0.0)

    def test_identity_function_reproduces_block(self):
        np.testing.assert_array_equal(
            func_jordan_block(Monomial(1), 2.5, 3), jordan_block(2.5, 3)
        )

    def test_square_matches_matrix_product(self):
        j = jordan_block(1.5, 4)
        np.testing.assert_allclose(func_jordan_block(Monomial(2), 1.5, 4), j @ j)

    def test_polynomial_matches_horner_on_block(self):
        rng = np.random.default_rng(5)
        for lam in (0.0, 2.0, -1.5, 1 + 1j):
            for size in (1, 2, 3, 5):
                coeffs = rng.uniform(-2, 2, size=rng.integers(1, 7))
                j = jordan_block(lam, size)
                expected = np.zeros((size, size), dtype=complex)
                for c in coeffs[::-1]:
                    expected = expected @ j + c * np.eye(size)
                got = func_jordan_block(Polynomial(tuple(coeffs)), lam, size)
                scale = max(1.0, np.max(np.abs(expected)))
                assert np.max(np.abs(got - expected)) < 1e-9 * scale


def pair_transport(f, lam, size):
    """Independent oracle: conjugate f(J(lam)) + f(J(conj lam)) into the
    real pair basis through the explicit interleaving similarity."""
    s = np.array([[1, 1], [1j, -1j]])
    order = [t for i in range(size) for t in (i, size + i)]
    p = np.eye(2 * size)[order]
    w = np.kron(np.eye(size), s) @ p
    bd = block_diag(
        [func_jordan_block(f, lam, size), func_jordan_block(f, np.conj(lam), size)]
    )
    return w @ bd @ np.linalg.inv(w)


class TestFuncRealJordanBlock:
    def test_exp_at_i(self):
        got = func_real_jordan_block(Exp(), 1j, 1)
        expected = [[math.cos(1), math.sin(1)], [-math.sin(1), math.cos(1)]]
        np.testing.assert_allclose(got, expected, atol=1e-15)

    def test_square_at_one_plus_i(self):
        got = func_real_jordan_block(Monomial(2), 1 + 1j, 1)
        np.testing.assert_allclose(got, [[0, 2], [-2, 0]], atol=1e-15)

    def test_matches_complex_transport(self):
        for f in (Exp(), Monomial(3), PrincipalRoot(2)):
            for lam in (1 + 1j, 0.5 + 2j):
                for size in (1, 2, 3):
                    got = func_real_jordan_block(f, lam, size)
                    expected = pair_transport(f, lam, size)
                    assert np.max(np.abs(expected.imag)) < 1e-10
                    np.testing.assert_allclose(got, expected.real, atol=1e-10)

    def test_output_dtype_real(self):
        assert func_real_jordan_block(Exp(), 2j, 2).dtype == np.float64

    def test_conjugate_symmetry_enforced(self):
        with pytest.raises(ConjugateSymmetryError):
            func_real_jordan_block(SkewedDerivatives(), 1 + 1j, 1)


class TestMatrixFunction:
    def test_identity_function_reconstructs(self):
        factors = extract_diagonalizable_structure(B)
        np.testing.assert_allclose(matrix_function(factors, Monomial(1)), B, atol=1e-12)

    def test_fourth_power_of_golden(self):
        factors = extract_diagonalizable_structure(B)
        np.testing.assert_allclose(
            matrix_function(factors, Monomial(4)), [[38, 9], [18, 11]], atol=1e-10
        )

    def test_exp_of_diagonal(self):
        spec = JordanSpec(real_blocks=((1.0, 1), (0.0, 1)))
        _, factors = synthesize_matrix(spec, np.eye(2))
        np.testing.assert_allclose(
            matrix_function(factors, Exp()), np.diag([math.e, 1.0]), atol=1e-14
        )

    def test_jordan_structure_respected(self):
        spec = JordanSpec(real_blocks=((2.0, 3),))
        _, factors = synthesize_matrix(spec, np.eye(3))
        got = matrix_function(factors, Exp())
        e2 = math.exp(2.0)
        np.testing.assert_allclose(got, [[e2, e2, e2 / 2], [0, e2, e2], [0, 0, e2]])

    def test_non_real_result_rejected(self):
        # odd root of a negative eigenvalue is off the real axis
        spec = JordanSpec(real_blocks=((2.0, 1), (-1.0, 1)))
        _, factors = synthesize_matrix(spec, np.eye(2))
        with pytest.raises(NonRealResultError):
            matrix_function(factors, PrincipalRoot(3))

    def test_undefined_spectrum_rejected(self):
        spec = JordanSpec(real_blocks=((2.0, 2),))
        _, factors = synthesize_matrix(spec, np.eye(2))
        with pytest.raises(NotDefinedOnSpectrumError):
            matrix_function(factors, Abs())

    def test_conjugate_symmetry_violation_propagates(self):
        spec = JordanSpec(complex_blocks=((1 + 1j, 1),))
        _, factors = synthesize_matrix(spec, np.eye(2))
        with pytest.raises(ConjugateSymmetryError):
            matrix_function(factors, SkewedDerivatives())

    def test_spectral_mapping(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            factors = random_pf_factors(rng, max_dim=6, max_block_size=2)
            for f in (Exp(), Monomial(3), Polynomial((0.5, 1.0, 0.25))):
                fa = matrix_function(factors, f)
                w, _ = eigen_decompose(fa)
                expected = [f.eval(z) for z in factors.spec.eigenvalue_multiset()]
                assert_multiset_close(w, expected, atol=1e-6)

    def test_transpose_commutes(self):
        # factors of A^T assembled by flipping each block through its
        # reversal involution; f must then commute with transposition
        rng = np.random.default_rng(31)
        factors = random_pf_factors(rng, max_dim=6, max_block_size=3)
        spec = factors.spec
        blocks = []
        for _, n in spec.real_blocks:
            blocks.append(np.eye(n)[::-1])
        for _, n in spec.complex_blocks:
            blocks.append(np.kron(np.eye(n)[::-1], np.diag([1.0, -1.0])))
        q = block_diag(blocks)
        rt = np.linalg.inv(factors.transform).T @ q
        factors_t = type(factors)(spec, rt, np.linalg.inv(rt))
        a = factors.reconstruct()
        np.testing.assert_allclose(factors_t.reconstruct(), a.T, atol=1e-9)
        for f in (Exp(), Monomial(2)):
            fa = matrix_function(factors, f)
            fat = matrix_function(factors_t, f)
            np.testing.assert_allclose(fat, fa.T, atol=1e-8)


class TestTaylorOracle:
    def test_cube_is_matrix_power(self):
        rng = np.random.default_rng(41)
        a = rng.standard_normal((4, 4))
        np.testing.assert_allclose(taylor_oracle(a, Monomial(3), 10), a @ a @ a)

    def test_exp_of_zero_matrix(self):
        np.testing.assert_array_equal(taylor_oracle(np.zeros((3, 3)), Exp(), 30), np.eye(3))

    def test_exp_agrees_with_jordan_route(self):
        # tail bound for ||B||_inf = 3 at 60 terms is far below 1e-8
        tail = 3.0 ** 60 / math.factorial(60)
        assert tail < 1e-30
        factors = extract_diagonalizable_structure(B)
        got = matrix_function(factors, Exp())
        oracle = taylor_oracle(B, Exp(), 60)
        assert np.max(np.abs(got - oracle)) < 1e-8

    def test_non_entire_rejected(self):
        with pytest.raises(NotEntireError):
            taylor_oracle(np.eye(2), PrincipalRoot(3), 10)
        with pytest.raises(NotEntireError):
            taylor_oracle(np.eye(2), Abs(), 10)

    def test_bad_terms_rejected(self):
        with pytest.raises(ValueError):
            taylor_oracle(np.eye(2), Exp(), 0)


class TestReflection:
    def test_catalogue_exactly_symmetric(self):
        rng = np.random.default_rng(43)
        for f in differentiable_catalogue():
            pts = random_domain_points(rng, f, 25)
            assert reflection_check(f, pts, max_order=2)

    def test_asymmetric_double_caught(self):
        check = reflection_check(SkewedDerivatives(), [1 + 1j], max_order=0)
        assert not check
        assert check.witness == (1 + 1j, 0)
