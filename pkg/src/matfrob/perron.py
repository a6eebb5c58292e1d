"""Strong Perron-Frobenius checks, eventual positivity, preservation verdicts.

A real square matrix has the strong Perron-Frobenius property when its
spectral radius rho is a positive, simple, strictly dominant eigenvalue
with an entrywise positive eigenvector. A matrix is eventually positive
(all powers beyond some threshold entrywise positive) exactly when the
matrix and its transpose both have that property.

The scalar-side counterpart: a function f preserves the property iff, on
the relevant spectrum, f is conjugate-symmetric, maps rho to a positive
real, and satisfies |f(lambda)| < f(rho) strictly inside the spectral
circle. frobenius_check measures those three conditions pointwise and
verify_preservation_theorem compares the scalar verdict against the
matrix-level outcome.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    PreconditionError,
    Tolerance,
    as_real_matrix,
    eigen_decompose,
    norm_inf,
    require_square,
)
from .funcalc import (
    CheckResult,
    ConjugateSymmetryError,
    NonRealResultError,
    SpectralFunction,
    matrix_function,
)
from .jordan import RealJordanFactors

__all__ = [
    "PerronReport",
    "EventualPositivityReport",
    "FrobeniusVerdict",
    "PreservationResult",
    "spectral_radius",
    "strong_pf_check",
    "eventually_positive_check",
    "power_threshold",
    "frobenius_check",
    "verify_preservation_theorem",
    "derivative_reality_check",
]

CONDITION_LABELS = {
    "rho_positive": "spectral radius is positive",
    "rho_in_spectrum": "spectral radius is an eigenvalue",
    "eigvec_positive": "eigenvector at rho is entrywise positive",
    "simple": "rho is a simple eigenvalue",
    "strictly_dominant": "rho strictly dominates all other eigenvalues",
}


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


@dataclass(frozen=True)
class PerronReport:
    """Per-condition verdicts for the strong Perron-Frobenius property."""

    rho: float
    spectrum: tuple[complex, ...]
    rho_positive: bool
    rho_in_spectrum: bool
    eigvec: np.ndarray | None
    eigvec_positive: bool
    simple: bool
    strictly_dominant: bool
    dominance_margin: float
    overall: bool

    def condition_verdicts(self) -> dict[str, bool]:
        return {
            "rho_positive": self.rho_positive,
            "rho_in_spectrum": self.rho_in_spectrum,
            "eigvec_positive": self.eigvec_positive,
            "simple": self.simple,
            "strictly_dominant": self.strictly_dominant,
        }

    def failed_conditions(self) -> list[str]:
        return [k for k, ok in self.condition_verdicts().items() if not ok]

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "spectrum": [{"re": z.real, "im": z.imag} for z in self.spectrum],
            "conditions": self.condition_verdicts(),
            "eigvec": None if self.eigvec is None else [float(x) for x in self.eigvec],
            "dominance_margin": self.dominance_margin,
            "overall": self.overall,
        }

    def format_text(self) -> str:
        lines = [f"spectral radius rho = {self.rho:.15g}"]
        for key, ok in self.condition_verdicts().items():
            mark = "pass" if ok else "FAIL"
            extra = ""
            if key == "strictly_dominant":
                extra = f" (margin {self.dominance_margin:.6g})"
            lines.append(f"  [{mark}] {CONDITION_LABELS[key]}{extra}")
        lines.append(
            "strong Perron-Frobenius property: "
            + ("HOLDS" if self.overall else "DOES NOT HOLD")
        )
        return "\n".join(lines)


def spectral_radius(a, tol: Tolerance = DEFAULT_TOL) -> float:
    """Largest eigenvalue magnitude."""
    w, _ = eigen_decompose(as_real_matrix(a), tol)
    return float(np.max(np.abs(w)))


def strong_pf_check(a, tol: Tolerance = DEFAULT_TOL) -> PerronReport:
    """Measure the five strong Perron-Frobenius conditions on a real matrix.

    Simplicity and dominance are decided against the eigenvalue cluster
    within 1e-6 * ||A||_inf of rho, so a numerically split multiple
    eigenvalue is still recognized as one.
    """
    m = as_real_matrix(a)
    require_square(m)
    w, v = eigen_decompose(m, tol)
    rho = float(np.max(np.abs(w)))
    rho_positive = rho > tol.abs_eps

    dist = np.abs(w - rho)
    idx = int(np.argmin(dist))
    rho_in_spectrum = tol.eq(w[idx], rho)

    eigvec = None
    eigvec_positive = False
    if rho_in_spectrum:
        col = v[:, idx]
        k = int(np.argmax(np.abs(col)))
        col = col / col[k]
        vec = col.real.copy()
        eigvec = vec
        eigvec_positive = bool(np.all(vec > tol.abs_eps))

    cluster_radius = 1e-6 * norm_inf(m)
    in_cluster = dist <= cluster_radius
    simple = rho_in_spectrum and int(np.sum(in_cluster)) == 1
    others = w[~in_cluster]
    if others.size:
        margin = float(rho - np.max(np.abs(others)))
    else:
        margin = float("inf") if rho_in_spectrum else 0.0
    strictly_dominant = rho_in_spectrum and margin > tol.abs_eps

    overall = (
        rho_positive
        and rho_in_spectrum
        and eigvec_positive
        and simple
        and strictly_dominant
    )
    if eigvec is not None:
        eigvec.setflags(write=False)
    return PerronReport(
        rho=rho,
        spectrum=tuple(complex(z) for z in w),
        rho_positive=rho_positive,
        rho_in_spectrum=rho_in_spectrum,
        eigvec=eigvec,
        eigvec_positive=eigvec_positive,
        simple=simple,
        strictly_dominant=strictly_dominant,
        dominance_margin=margin,
        overall=overall,
    )


@dataclass(frozen=True)
class EventualPositivityReport:
    """Two-sided strong Perron-Frobenius verdict (matrix and transpose)."""

    overall: bool
    matrix_report: PerronReport
    transpose_report: PerronReport

    def to_dict(self) -> dict:
        return {
            "overall": self.overall,
            "matrix": self.matrix_report.to_dict(),
            "transpose": self.transpose_report.to_dict(),
        }

    def format_text(self) -> str:
        return "\n".join(
            [
                "matrix side:",
                self.matrix_report.format_text(),
                "transpose side:",
                self.transpose_report.format_text(),
                "eventually positive: " + ("YES" if self.overall else "NO"),
            ]
        )


def eventually_positive_check(
    a, tol: Tolerance = DEFAULT_TOL
) -> EventualPositivityReport:
    """Eventual positivity via the two-sided strong Perron-Frobenius test."""
    m = as_real_matrix(a)
    r1 = strong_pf_check(m, tol)
    r2 = strong_pf_check(m.T, tol)
    return EventualPositivityReport(r1.overall and r2.overall, r1, r2)


def power_threshold(a, k_max: int, tol: Tolerance = DEFAULT_TOL) -> int | None:
    """Brute-force positivity threshold by explicit powers.

    Returns the smallest p such that A^k is entrywise strictly positive for
    every p <= k <= k_max, or None when A^k_max itself is not positive.
    Powers are computed on A / rho to keep magnitudes near 1; positivity is
    scale invariant.
    """
    m = as_real_matrix(a)
    require_square(m)
    k_max = int(k_max)
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    rho = spectral_radius(m, tol)
    base = m / rho if rho > tol.abs_eps else m
    flags = []
    power = np.eye(base.shape[0])
    for _ in range(k_max):
        power = power @ base
        flags.append(bool(np.all(power > 0.0)))
    if not flags[-1]:
        return None
    p = k_max
    while p > 1 and flags[p - 2]:
        p -= 1
    return p


@dataclass(frozen=True)
class FrobeniusVerdict:
    """Pointwise verdicts for the three scalar preservation conditions.

    Witnesses record the worst observed point: largest conjugate-symmetry
    defect, smallest domination gap. A point where f is undefined counts as
    a failure of the condition that needed it (witness diff infinite).
    """

    conjugate_symmetry: bool
    conjugate_witness: tuple[complex, float] | None
    modulus_domination: bool
    modulus_marginal: bool
    modulus_witness: tuple[complex, float, float] | None
    positivity_at_rho: bool
    overall: bool
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        cw = self.conjugate_witness
        mw = self.modulus_witness
        return {
            "conjugate_symmetry": self.conjugate_symmetry,
            "conjugate_witness": None
            if cw is None
            else {"re": cw[0].real, "im": cw[0].imag, "defect": cw[1]},
            "modulus_domination": self.modulus_domination,
            "modulus_marginal": self.modulus_marginal,
            "modulus_witness": None
            if mw is None
            else {
                "re": mw[0].real,
                "im": mw[0].imag,
                "abs_f": mw[1],
                "f_rho": mw[2],
            },
            "positivity_at_rho": self.positivity_at_rho,
            "overall": self.overall,
            "notes": list(self.notes),
        }

    def format_text(self) -> str:
        lines = []
        mark = lambda ok: "pass" if ok else "FAIL"  # noqa: E731
        lines.append(f"  [{mark(self.conjugate_symmetry)}] conjugate symmetry")
        if self.conjugate_witness is not None:
            z, d = self.conjugate_witness
            lines.append(f"         worst point {_fmt_complex(z)}, defect {d:.3e}")
        dom = f"  [{mark(self.modulus_domination)}] strict modulus domination"
        if self.modulus_marginal:
            dom += " (marginal: gap within tolerance of zero)"
        lines.append(dom)
        if self.modulus_witness is not None:
            z, af, frho = self.modulus_witness
            lines.append(
                f"         tightest point {_fmt_complex(z)}: |f| = {af:.6g} "
                f"vs f(rho) = {frho:.6g}"
            )
        lines.append(f"  [{mark(self.positivity_at_rho)}] f(rho) is a positive real")
        for note in self.notes:
            lines.append(f"  note: {note}")
        lines.append(
            "scalar preservation conditions: "
            + ("HOLD" if self.overall else "DO NOT HOLD")
        )
        return "\n".join(lines)


def _disc_grid(rho: float, density: int) -> list[complex]:
    xs = np.linspace(-rho, rho, density)
    pts = []
    for x in xs:
        for y in xs:
            z = complex(x, y)
            if abs(z) <= rho:
                pts.append(z)
    return pts


def frobenius_check(
    f: SpectralFunction,
    spectrum,
    rho: float,
    tol: Tolerance = DEFAULT_TOL,
    grid: int | None = None,
) -> FrobeniusVerdict:
    """Test the scalar preservation conditions on the given spectrum.

    Checks, for each spectrum point lam: conj(f(lam)) == f(conj lam); and
    for points strictly inside the circle of radius rho: |f(lam)| < f(rho).
    Also that f(rho) itself is a positive real. With `grid` set, an
    additional grid x grid lattice over the disc (intersected with f's
    domain) is sampled for extra coverage; spectrum points outside the
    domain are condition failures, grid points outside are just skipped.
    """
    rho = float(rho)
    notes: list[str] = []
    points = [complex(z) for z in spectrum]

    f_rho_real = None
    positivity = False
    if not f.domain.contains(rho):
        notes.append(f"rho = {rho:.6g} is outside the domain of {f.describe()}")
    else:
        f_rho = f.eval(rho)
        positivity = abs(f_rho.imag) <= tol.abs_eps and f_rho.real > tol.abs_eps
        f_rho_real = f_rho.real
        if not positivity:
            notes.append(
                f"f(rho) = {_fmt_complex(f_rho)} is not a positive real"
            )

    conj_ok = True
    conj_worst: tuple[complex, float] | None = None
    dom_ok = True
    marginal = False
    dom_worst: tuple[complex, float, float] | None = None

    def visit(z: complex, from_grid: bool) -> None:
        nonlocal conj_ok, conj_worst, dom_ok, marginal, dom_worst
        in_dom = f.domain.contains(z) and f.domain.contains(z.conjugate())
        if not in_dom:
            if from_grid:
                return
            conj_ok = False
            conj_worst = (z, float("inf"))
            notes.append(f"{_fmt_complex(z)} is outside the domain of {f.describe()}")
            return
        val = f.eval(z)
        defect = abs(val.conjugate() - f.eval(z.conjugate()))
        if conj_worst is None or defect > conj_worst[1]:
            conj_worst = (z, defect)
        if not tol.eq(val.conjugate(), f.eval(z.conjugate())):
            conj_ok = False
        if f_rho_real is not None and abs(z) < rho - tol.abs_eps:
            gap = f_rho_real - abs(val)
            if dom_worst is None or gap < f_rho_real - dom_worst[1]:
                dom_worst = (z, abs(val), f_rho_real)
            if gap <= tol.abs_eps:
                dom_ok = False
                if abs(gap) <= tol.abs_eps:
                    marginal = True

    for z in points:
        visit(z, from_grid=False)
    if grid is not None and grid > 1:
        for z in _disc_grid(rho, int(grid)):
            visit(z, from_grid=True)

    overall = conj_ok and dom_ok and positivity
    return FrobeniusVerdict(
        conjugate_symmetry=conj_ok,
        conjugate_witness=conj_worst,
        modulus_domination=dom_ok,
        modulus_marginal=marginal,
        modulus_witness=dom_worst,
        positivity_at_rho=positivity,
        overall=overall,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class PreservationResult:
    """Both sides of the preservation equivalence, plus their agreement."""

    f_is_frobenius: bool
    frobenius: FrobeniusVerdict
    matrix_report: PerronReport
    f_of_a: np.ndarray | None
    f_of_a_error: str | None
    fa_strong_pf: bool
    fa_report: PerronReport | None
    theorem_consistent: bool

    def to_dict(self) -> dict:
        return {
            "f_is_frobenius": self.f_is_frobenius,
            "frobenius": self.frobenius.to_dict(),
            "matrix": self.matrix_report.to_dict(),
            "f_of_a_error": self.f_of_a_error,
            "fa_strong_pf": self.fa_strong_pf,
            "fa_report": None if self.fa_report is None else self.fa_report.to_dict(),
            "theorem_consistent": self.theorem_consistent,
        }

    def format_text(self) -> str:
        lines = ["scalar side:"]
        lines.append(self.frobenius.format_text())
        lines.append("matrix side:")
        if self.f_of_a_error is not None:
            lines.append(f"  f(A) could not be formed as a real matrix:")
            lines.append(f"  {self.f_of_a_error}")
            lines.append("  strong Perron-Frobenius property: DOES NOT HOLD")
        else:
            lines.append(self.fa_report.format_text())
        lines.append(
            "scalar and matrix verdicts "
            + ("AGREE" if self.theorem_consistent else "DISAGREE")
        )
        return "\n".join(lines)


def verify_preservation_theorem(
    factors: RealJordanFactors, f: SpectralFunction, tol: Tolerance = DEFAULT_TOL
) -> PreservationResult:
    """Compare the scalar verdict with the matrix-level outcome on f(A).

    A must carry the strong Perron-Frobenius property to begin with (the
    equivalence says nothing otherwise); violating that raises
    PreconditionError. A conjugate-symmetry or non-real-result failure while
    forming f(A) is the "f(A) is not a real strong Perron-Frobenius matrix"
    outcome, not an error. Other failures (f undefined on the spectrum)
    propagate, since they void the comparison's hypothesis.
    """
    a = factors.reconstruct()
    a_report = strong_pf_check(a, tol)
    if not a_report.overall:
        raise PreconditionError(
            "the factored matrix lacks the strong Perron-Frobenius property "
            f"(failed: {', '.join(a_report.failed_conditions())})"
        )
    spectrum = factors.spec.eigenvalue_multiset()
    rho = max(abs(z) for z in spectrum)
    verdict = frobenius_check(f, spectrum, rho, tol)

    f_of_a = None
    fa_error = None
    fa_report = None
    fa_pf = False
    try:
        f_of_a = matrix_function(factors, f, tol)
    except (ConjugateSymmetryError, NonRealResultError) as exc:
        fa_error = str(exc)
    else:
        fa_report = strong_pf_check(f_of_a, tol)
        fa_pf = fa_report.overall

    return PreservationResult(
        f_is_frobenius=verdict.overall,
        frobenius=verdict,
        matrix_report=a_report,
        f_of_a=f_of_a,
        f_of_a_error=fa_error,
        fa_strong_pf=fa_pf,
        fa_report=fa_report,
        theorem_consistent=(verdict.overall == fa_pf),
    )


def derivative_reality_check(
    f: SpectralFunction,
    real_samples,
    max_order: int,
    tol: Tolerance = DEFAULT_TOL,
) -> CheckResult:
    """All derivatives up to max_order are real at the given real points.

    Samples must lie in f's domain; a non-differentiable node raises rather
    than failing the verdict.
    """
    for r in real_samples:
        r = float(r)
        for j in range(int(max_order) + 1):
            val = f.deriv(complex(r, 0.0), j)
            if abs(val.imag) > tol.abs_eps:
                return CheckResult(
                    False,
                    (complex(r, 0.0), j),
                    f"order-{j} derivative of {f.describe()} at {r:.6g} has "
                    f"imaginary part {val.imag:.3e}",
                )
    return CheckResult(True)
