"""Scalar function calculus on matrices through explicit Jordan factors.

Functions are small immutable expression trees. Each node knows its domain,
evaluates with the principal branch wherever a branch choice exists, and
differentiates to arbitrary order through exact closed-form rules. Exact
rules matter: per-block evaluation needs f^(j)(lambda) / j! up to the block
size, and numerical differentiation cannot deliver those orders at the
accuracy the reconstruction demands.

The value of f on a matrix in factored form A = R J R^{-1} is assembled
blockwise: an upper triangular Toeplitz block per real Jordan block, and a
rotation-block Toeplitz per conjugate pair. The pair path requires the
derivative values at lambda and conj(lambda) to be conjugates of each other;
functions violating that cannot produce a real matrix and are rejected.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, MatFrobError, Tolerance, as_real_matrix, norm_inf, require_square
from .jordan import JordanSpec, RealJordanFactors, block_diag, rotation_block

__all__ = [
    "DomainError",
    "NonDifferentiableError",
    "ConjugateSymmetryError",
    "NonRealResultError",
    "NotEntireError",
    "NotDefinedOnSpectrumError",
    "DomainDescriptor",
    "SpectralFunction",
    "Monomial",
    "PrincipalRoot",
    "Abs",
    "Exp",
    "Polynomial",
    "ScaledSum",
    "CheckResult",
    "defined_on_spectrum",
    "reflection_check",
    "func_jordan_block",
    "func_real_jordan_block",
    "matrix_function",
    "taylor_oracle",
]


class DomainError(MatFrobError):
    """Evaluation point lies outside the function's domain."""


class NonDifferentiableError(MatFrobError):
    """Requested derivative order is not available for this node."""


class ConjugateSymmetryError(MatFrobError):
    """Derivative values at a conjugate pair are not conjugate."""


class NonRealResultError(MatFrobError):
    """Assembled matrix function has a non-negligible imaginary part."""


class NotEntireError(MatFrobError):
    """Power-series coefficients requested from a non-entire function."""


class NotDefinedOnSpectrumError(MatFrobError):
    """The Jordan structure needs values or derivatives f cannot provide."""


@dataclass(frozen=True)
class DomainDescriptor:
    """Subset of the complex plane described by exclusion flags.

    Both exclusions are symmetric about the real axis, so every describable
    domain is self-conjugate, which the conjugate-symmetry machinery needs.
    """

    excludes_nonpositive_reals: bool = False
    excludes_origin: bool = False

    def contains(self, z: complex) -> bool:
        z = complex(z)
        if self.excludes_nonpositive_reals and z.imag == 0.0 and z.real <= 0.0:
            return False
        if self.excludes_origin and z == 0.0:
            return False
        return True

    def merged(self, other: "DomainDescriptor") -> "DomainDescriptor":
        """Intersection of the two domains (union of exclusions)."""
        return DomainDescriptor(
            self.excludes_nonpositive_reals or other.excludes_nonpositive_reals,
            self.excludes_origin or other.excludes_origin,
        )


class SpectralFunction:
    """Base scalar function node.

    Subclasses implement ``_eval`` and ``_deriv`` (order >= 1), override
    ``domain`` when not all of C, and ``max_derivative_order`` when not
    smooth. Entire nodes additionally provide ``taylor_coefficients``.
    """

    @property
    def domain(self) -> DomainDescriptor:
        return DomainDescriptor()

    @property
    def is_entire(self) -> bool:
        return False

    def max_derivative_order(self) -> int | None:
        """Largest available derivative order; None means unbounded."""
        return None

    def describe(self) -> str:
        """Expression-language rendering of this node."""
        raise NotImplementedError

    def eval(self, z: complex) -> complex:
        z = complex(z)
        self._require_in_domain(z)
        return self._eval(z)

    def deriv(self, z: complex, order: int) -> complex:
        order = int(order)
        if order < 0:
            raise ValueError(f"derivative order must be nonnegative, got {order}")
        z = complex(z)
        self._require_in_domain(z)
        if order == 0:
            return self._eval(z)
        cap = self.max_derivative_order()
        if cap is not None and order > cap:
            raise NonDifferentiableError(
                f"{self.describe()} has no derivative of order {order}"
            )
        return self._deriv(z, order)

    def taylor_coefficients(self, terms: int) -> np.ndarray:
        raise NotEntireError(
            f"{self.describe()} is not entire; no globally convergent series"
        )

    def _require_in_domain(self, z: complex) -> None:
        if not self.domain.contains(z):
            raise DomainError(f"{z} is outside the domain of {self.describe()}")

    def _eval(self, z: complex) -> complex:
        raise NotImplementedError

    def _deriv(self, z: complex, order: int) -> complex:
        raise NotImplementedError


@dataclass(frozen=True)
class Monomial(SpectralFunction):
    """z**power for a positive integer power."""

    power: int

    def __post_init__(self) -> None:
        if int(self.power) < 1:
            raise ValueError(f"power must be a positive integer, got {self.power}")
        object.__setattr__(self, "power", int(self.power))

    @property
    def is_entire(self) -> bool:
        return True

    def describe(self) -> str:
        return f"pow:{self.power}"

    def _eval(self, z: complex) -> complex:
        return z ** self.power

    def _deriv(self, z: complex, order: int) -> complex:
        if order > self.power:
            return 0j
        coeff = 1.0
        for i in range(order):
            coeff *= self.power - i
        return coeff * z ** (self.power - order)

    def taylor_coefficients(self, terms: int) -> np.ndarray:
        c = np.zeros(terms)
        if self.power < terms:
            c[self.power] = 1.0
        return c


@dataclass(frozen=True)
class PrincipalRoot(SpectralFunction):
    """z**(1/degree) on the principal branch, degree >= 2.

    The branch cut sits on the negative real axis with values taken
    continuously from above (argument in (-pi, pi]). Even degrees exclude
    the nonpositive reals outright; odd degrees only the origin, where no
    derivative exists. On negative reals an odd root therefore evaluates to
    a non-real principal value rather than the real root.
    """

    degree: int

    def __post_init__(self) -> None:
        if int(self.degree) < 2:
            raise ValueError(f"degree must be at least 2, got {self.degree}")
        object.__setattr__(self, "degree", int(self.degree))

    @property
    def domain(self) -> DomainDescriptor:
        if self.degree % 2 == 0:
            return DomainDescriptor(excludes_nonpositive_reals=True)
        return DomainDescriptor(excludes_origin=True)

    def describe(self) -> str:
        return f"root:{self.degree}"

    @staticmethod
    def _power(z: complex, w: float) -> complex:
        # normalize -0.0 imaginary parts so the cut is approached from above
        if z.imag == 0.0:
            z = complex(z.real, 0.0)
        return z ** w

    def _eval(self, z: complex) -> complex:
        return self._power(z, 1.0 / self.degree)

    def _deriv(self, z: complex, order: int) -> complex:
        e = 1.0 / self.degree
        coeff = 1.0
        for i in range(order):
            coeff *= e - i
        return coeff * self._power(z, e - order)


@dataclass(frozen=True)
class Abs(SpectralFunction):
    """|z|; defined everywhere, differentiable nowhere."""

    def max_derivative_order(self) -> int | None:
        return 0

    def describe(self) -> str:
        return "abs"

    def _eval(self, z: complex) -> complex:
        return complex(abs(z))

    def _deriv(self, z: complex, order: int) -> complex:  # pragma: no cover
        raise NonDifferentiableError("abs has no derivatives")


@dataclass(frozen=True)
class Exp(SpectralFunction):
    """exp(z)."""

    @property
    def is_entire(self) -> bool:
        return True

    def describe(self) -> str:
        return "exp"

    def _eval(self, z: complex) -> complex:
        return cmath.exp(z)

    def _deriv(self, z: complex, order: int) -> complex:
        return cmath.exp(z)

    def taylor_coefficients(self, terms: int) -> np.ndarray:
        c = np.empty(terms)
        c[0] = 1.0
        for k in range(1, terms):
            c[k] = c[k - 1] / k
        return c


@dataclass(frozen=True)
class Polynomial(SpectralFunction):
    """sum_k coeffs[k] * z**k with real coefficients."""

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def is_entire(self) -> bool:
        return True

    def describe(self) -> str:
        return "poly:" + ",".join(repr(c) for c in self.coeffs)

    @staticmethod
    def _horner(coeffs, z: complex) -> complex:
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    def _eval(self, z: complex) -> complex:
        return self._horner(self.coeffs, z)

    def _deriv(self, z: complex, order: int) -> complex:
        cs = list(self.coeffs)
        for _ in range(order):
            cs = [k * c for k, c in enumerate(cs)][1:]
            if not cs:
                return 0j
        return self._horner(cs, z)

    def taylor_coefficients(self, terms: int) -> np.ndarray:
        c = np.zeros(terms)
        upto = min(terms, len(self.coeffs))
        c[:upto] = self.coeffs[:upto]
        return c


@dataclass(frozen=True)
class ScaledSum(SpectralFunction):
    """sum_k weight_k * f_k with real weights; domain is the intersection."""

    terms: tuple[tuple[float, SpectralFunction], ...]

    def __post_init__(self) -> None:
        terms = tuple((float(w), f) for w, f in self.terms)
        if not terms:
            raise ValueError("scaled sum needs at least one term")
        for _, f in terms:
            if not isinstance(f, SpectralFunction):
                raise TypeError(f"expected a SpectralFunction term, got {type(f)!r}")
        object.__setattr__(self, "terms", terms)

    @property
    def domain(self) -> DomainDescriptor:
        dom = DomainDescriptor()
        for _, f in self.terms:
            dom = dom.merged(f.domain)
        return dom

    @property
    def is_entire(self) -> bool:
        return all(f.is_entire for _, f in self.terms)

    def max_derivative_order(self) -> int | None:
        caps = [f.max_derivative_order() for _, f in self.terms]
        finite = [c for c in caps if c is not None]
        return min(finite) if finite else None

    def describe(self) -> str:
        return " + ".join(f"{w!r}*{f.describe()}" for w, f in self.terms)

    def _eval(self, z: complex) -> complex:
        return sum(w * f.eval(z) for w, f in self.terms)

    def _deriv(self, z: complex, order: int) -> complex:
        return sum(w * f.deriv(z, order) for w, f in self.terms)

    def taylor_coefficients(self, terms: int) -> np.ndarray:
        if not self.is_entire:
            raise NotEntireError(f"{self.describe()} is not entire")
        acc = np.zeros(terms)
        for w, f in self.terms:
            acc = acc + w * f.taylor_coefficients(terms)
        return acc


@dataclass(frozen=True)
class CheckResult:
    """Boolean verdict with an optional (point, order) witness."""

    ok: bool
    witness: tuple[complex, int] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def defined_on_spectrum(
    f: SpectralFunction, spec: JordanSpec, tol: Tolerance = DEFAULT_TOL
) -> CheckResult:
    """Whether every value/derivative the Jordan structure needs exists.

    An eigenvalue of index m needs f^(j) for j = 0..m-1. On failure the
    witness carries the offending eigenvalue and the first missing order.
    """
    cap = f.max_derivative_order()
    for lam, index in spec.distinct_eigenvalues(tol):
        if not f.domain.contains(lam):
            return CheckResult(
                False, (lam, 0), f"{lam} is outside the domain of {f.describe()}"
            )
        if cap is not None and index - 1 > cap:
            return CheckResult(
                False,
                (lam, cap + 1),
                f"{f.describe()} has no order-{cap + 1} derivative needed by a "
                f"size-{index} block at {lam}",
            )
    return CheckResult(True)


def reflection_check(
    f: SpectralFunction,
    points,
    max_order: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> CheckResult:
    """conj(f^(j)(z)) == f^(j)(conj z) at each point for j <= max_order."""
    for z in points:
        z = complex(z)
        for j in range(max_order + 1):
            lhs = f.deriv(z, j).conjugate()
            rhs = f.deriv(z.conjugate(), j)
            if not tol.eq(lhs, rhs):
                return CheckResult(
                    False,
                    (z, j),
                    f"order-{j} derivative of {f.describe()} is not "
                    f"conjugate-symmetric at {z}: conj gives {lhs}, "
                    f"direct gives {rhs}",
                )
    return CheckResult(True)


def func_jordan_block(f: SpectralFunction, lam: complex, size: int) -> np.ndarray:
    """f applied to a single Jordan block.

    Upper triangular Toeplitz: entry (i, i+k) equals f^(k)(lam) / k!.
    """
    if size < 1:
        raise ValueError(f"block size must be at least 1, got {size}")
    lam = complex(lam)
    m = np.zeros((size, size), dtype=complex)
    for k in range(size):
        val = f.deriv(lam, k) / math.factorial(k)
        idx = np.arange(size - k)
        m[idx, idx + k] = val
    return m


def func_real_jordan_block(
    f: SpectralFunction, lam: complex, size: int, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """f applied to the real block of the conjugate pair (lam, conj lam).

    Block upper triangular Toeplitz with rotation_block(f^(k)(lam) / k!) on
    the k-th block superdiagonal. Valid only when derivative values at the
    pair are conjugates of each other, which is what makes the result real;
    otherwise ConjugateSymmetryError is raised with the offending order.
    """
    if size < 1:
        raise ValueError(f"block size must be at least 1, got {size}")
    lam = complex(lam)
    vals: list[complex] = []
    for j in range(size):
        d = f.deriv(lam, j)
        d_conj = f.deriv(lam.conjugate(), j)
        if not tol.eq(d.conjugate(), d_conj):
            raise ConjugateSymmetryError(
                f"order-{j} derivative of {f.describe()} is not conjugate-"
                f"symmetric at {lam}: conj(f^({j})(lam)) = {d.conjugate()} but "
                f"f^({j})(conj lam) = {d_conj}"
            )
        vals.append(d / math.factorial(j))
    m = np.zeros((2 * size, 2 * size))
    for j, val in enumerate(vals):
        rb = rotation_block(val)
        for i in range(size - j):
            m[2 * i : 2 * i + 2, 2 * (i + j) : 2 * (i + j) + 2] = rb
    return m


def matrix_function(
    factors: RealJordanFactors, f: SpectralFunction, tol: Tolerance = DEFAULT_TOL
) -> np.ndarray:
    """Evaluate f on a matrix given in real Jordan factored form.

    Assembles f per block and conjugates back by the stored transform. The
    result of a legitimate evaluation is a real matrix; residual imaginary
    dust up to abs_eps * max(1, ||result||_inf) is truncated, anything
    larger raises NonRealResultError (the function is not real on this
    spectrum).
    """
    check = defined_on_spectrum(f, factors.spec, tol)
    if not check:
        raise NotDefinedOnSpectrumError(check.reason)
    blocks: list[np.ndarray] = []
    for lam, n in factors.spec.real_blocks:
        blocks.append(func_jordan_block(f, lam, n))
    for lam, n in factors.spec.complex_blocks:
        blocks.append(func_real_jordan_block(f, lam, n, tol).astype(complex))
    core = block_diag(blocks)
    out = factors.transform @ core @ factors.transform_inverse
    dust = float(np.max(np.abs(out.imag))) if out.size else 0.0
    limit = tol.abs_eps * max(1.0, norm_inf(out))
    if dust > limit:
        raise NonRealResultError(
            f"matrix function result has imaginary magnitude {dust:.3e} "
            f"(limit {limit:.3e}); {f.describe()} is not real-valued on this "
            "spectrum"
        )
    return np.ascontiguousarray(out.real)


def taylor_oracle(a, f: SpectralFunction, terms: int) -> np.ndarray:
    """Truncated power series sum_{k<terms} c_k A^k, evaluated by Horner.

    Independent of the Jordan route on purpose: it only needs matrix
    products, so it cross-checks matrix_function for entire f. Non-entire
    functions are rejected.
    """
    if terms < 1:
        raise ValueError(f"need at least one term, got {terms}")
    m = as_real_matrix(a)
    require_square(m)
    if not f.is_entire:
        raise NotEntireError(
            f"{f.describe()} is not entire; the series oracle does not apply"
        )
    coeffs = np.asarray(f.taylor_coefficients(terms), dtype=float)
    eye = np.eye(m.shape[0])
    out = coeffs[-1] * eye
    for c in coeffs[-2::-1]:
        out = m @ out + c * eye
    return out
