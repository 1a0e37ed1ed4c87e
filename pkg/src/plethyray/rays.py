"""Sample plethysm multiplicities along scaled rays and fit quasi-polynomials.

A ray scales every parameter of a multiplicity query by s: either the inner
power and the partition (outer mode, f(s) = m^{d, s*k}_{s*lam}) or the outer
power and the partition (inner mode, g(s) = m^{s*d, k}_{s*lam}).  Both start
at f(0) = g(0) = 1 (the empty partition in the trivial representation), and
both are quasi-polynomials in s that we recover by exact interpolation.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .partitions import Partition, scale
from .plethysm import plethysm_multiplicity
from .quasipoly import FitFailure, QuasiPolynomial, fit, phi_reference

OUTER = "outer"
INNER = "inner"

PERIOD_LADDER = (1, 2, 3, 4, 6, 12)


@dataclass(frozen=True)
class RaySpec:
    mode: str
    d: int
    k: int
    lam: Partition

    def __init__(self, mode: str, d: int, k: int, lam: Partition):
        if mode not in (OUTER, INNER):
            raise ValueError(f"mode must be '{OUTER}' or '{INNER}', got {mode!r}")
        if d < 1 or k < 1:
            raise ValueError("d and k must be positive")
        if lam.size != d * k:
            raise ValueError(f"|lam| = {lam.size} != d*k = {d * k}: ray is not well-formed")
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "lam", lam)

    def to_json_dict(self) -> dict:
        return {"mode": self.mode, "d": self.d, "k": self.k, "lambda": str(self.lam)}


def ray_value(spec: RaySpec, s: int, backend: str | None = None) -> int:
    """The multiplicity at one ray point; s = 0 is 1 by convention."""
    if s == 0:
        return 1
    if spec.mode == OUTER:
        return plethysm_multiplicity(spec.d, s * spec.k, scale(spec.lam, s), backend=backend)
    return plethysm_multiplicity(s * spec.d, spec.k, scale(spec.lam, s), backend=backend)


def sample_ray(
    spec: RaySpec, s_max: int, backend: str | None = None, workers: int = 1
) -> list[int]:
    """Multiplicities for s = 0..s_max; entries are independent of each other.

    workers > 1 evaluates the entries in a process pool; the assembled list
    is in s order either way.
    """
    if s_max < 0:
        raise ValueError("s_max must be nonnegative")
    points = range(s_max + 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(ray_value, [spec] * len(points), points))
    return [ray_value(spec, s, backend=backend) for s in points]


def extract_quasipoly(
    spec: RaySpec,
    period_hint: int,
    degree_hint: int,
    s_max: int,
    samples: list[int] | None = None,
    backend: str | None = None,
) -> QuasiPolynomial | FitFailure:
    """Fit the ray's samples with the hinted period and degree.

    Requires s_max >= period_hint*(degree_hint+2): at least one full period of
    samples beyond the interpolation window validates the hypothesis instead
    of merely restating it.
    """
    if s_max < period_hint * (degree_hint + 2):
        raise ValueError(
            f"s_max = {s_max} < period*(degree+2) = {period_hint * (degree_hint + 2)}: "
            "not enough samples to validate the fit"
        )
    if samples is None:
        samples = sample_ray(spec, s_max, backend=backend)
    return fit(list(enumerate(samples)), period_hint, degree_hint)


def discover_quasipoly(
    spec: RaySpec,
    s_max: int,
    periods: tuple[int, ...] = PERIOD_LADDER,
    max_degree: int = 4,
    samples: list[int] | None = None,
    backend: str | None = None,
) -> tuple[QuasiPolynomial, int, int] | FitFailure:
    """Try periods from the ladder and degrees from 0 up; first validated fit wins.

    Returns (qp, period, degree) or the last FitFailure when nothing in the
    ladder validates.
    """
    if samples is None:
        samples = sample_ray(spec, s_max, backend=backend)
    pairs = list(enumerate(samples))
    last: FitFailure | None = None
    for period in periods:
        for degree in range(max_degree + 1):
            if s_max < period * (degree + 2):
                continue
            result = fit(pairs, period, degree)
            if isinstance(result, QuasiPolynomial):
                return result, period, degree
            last = result
    return last if last is not None else FitFailure(0, 0, 0)  # pragma: no cover


def verify_theorem_ray(
    s_max: int,
    inner_s_max: int | None = None,
    reference: QuasiPolynomial | None = None,
    backend: str | None = None,
) -> dict:
    """Compare both scaled rays of (d=3, k=4, lam=(7,5,0)) against the period-6 reference.

    The inner mode is capped at 8 by default (its cost grows with s*d).
    Failures are report content, not exceptions.
    """
    if reference is None:
        reference = phi_reference()
    if inner_s_max is None:
        inner_s_max = min(s_max, 8)
    lam = Partition((7, 5, 0))
    checks = []
    for mode, cap, d, k in ((OUTER, s_max, 3, 4), (INNER, inner_s_max, 4, 3)):
        spec = RaySpec(mode, d, k, lam)
        samples = sample_ray(spec, cap, backend=backend)
        for s, actual in enumerate(samples):
            expected = reference.eval(s)
            checks.append(
                {"mode": mode, "s": s,
                 "expected": int(expected) if expected.denominator == 1 else str(expected),
                 "actual": actual, "ok": expected == actual}
            )
    return {
        "s_max_outer": s_max,
        "s_max_inner": inner_s_max,
        "checks": checks,
        "pass": all(item["ok"] for item in checks),
    }


def interior_ray_check(
    t: int,
    s_max: int,
    reference: QuasiPolynomial | None = None,
    backend: str | None = None,
) -> dict:
    """Check the strictly interior ray lam = s*(7+2t, 5+2t, 2t) against the reference.

    The inner power is s*(4+2t): the partition has size s*(12+6t) = 3*s*(4+2t),
    so no other inner degree admits a nonzero multiplicity.  The report also
    records that the size constraint rules out the inner degree s*(5+2t) for
    every s >= 1 (those multiplicities vanish identically).
    """
    if t < 1:
        raise ValueError("t must be positive")
    if reference is None:
        reference = phi_reference()
    lam = Partition((7 + 2 * t, 5 + 2 * t, 2 * t))
    spec = RaySpec(OUTER, 3, 4 + 2 * t, lam)
    samples = sample_ray(spec, s_max, backend=backend)
    checks = []
    for s, actual in enumerate(samples):
        expected = reference.eval(s)
        checks.append(
            {"s": s,
             "expected": int(expected) if expected.denominator == 1 else str(expected),
             "actual": actual, "ok": expected == actual}
        )
    return {
        "t": t,
        "inner_degree": f"s*{4 + 2 * t}",
        "s_max": s_max,
        "checks": checks,
        "pass": all(item["ok"] for item in checks),
        "rejected_inner_degree": f"s*{5 + 2 * t}",
        "rejected_reason": (
            f"|s*lam| = {12 + 6 * t}*s != 3*{5 + 2 * t}*s: multiplicity is 0 for s >= 1"
        ),
    }
