"""Shared test utilities: spectrum comparison and function catalogues."""

import numpy as np

from matfrob import (
    Abs,
    Exp,
    Monomial,
    Polynomial,
    PrincipalRoot,
    ScaledSum,
)


def assert_multiset_close(actual, expected, atol=1e-7):
    """Greedy nearest matching of two complex multisets."""
    actual = [complex(z) for z in actual]
    remaining = [complex(z) for z in expected]
    assert len(actual) == len(remaining), (actual, remaining)
    for z in actual:
        j = min(range(len(remaining)), key=lambda k: abs(z - remaining[k]))
        assert abs(z - remaining[j]) <= atol, (z, remaining[j], atol)
        remaining.pop(j)


def differentiable_catalogue():
    return [
        Exp(),
        Monomial(1),
        Monomial(2),
        Monomial(3),
        Monomial(4),
        PrincipalRoot(2),
        PrincipalRoot(3),
        Polynomial((0.5, 1.0, 0.25)),
        ScaledSum(((0.5, Exp()), (1.0, Polynomial((1.0, 2.0))))),
    ]


def full_catalogue():
    return differentiable_catalogue() + [Abs()]


NEGATE = ScaledSum(((-1.0, Monomial(1)),))


def random_domain_points(rng, f, count, radius=2.0):
    """Random complex points inside f's domain, away from branch cuts."""
    pts = []
    excludes_cut = f.domain.excludes_nonpositive_reals or f.domain.excludes_origin
    while len(pts) < count:
        r = rng.uniform(0.3, radius)
        theta = rng.uniform(-np.pi, np.pi)
        z = complex(r * np.cos(theta), r * np.sin(theta))
        if excludes_cut and abs(z.imag) < 1e-3 * max(1.0, abs(z.real)):
            continue
        if not f.domain.contains(z):
            continue
        pts.append(z)
    return pts
