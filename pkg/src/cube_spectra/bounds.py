"""Closed-form and finite bound evaluation for codes on the Hamming cube.

Finite bounds are exact big integers (n times an exact ball size at the
certified radius); asymptotic quantities are plain floats.  The finite bound
for (n, d) picks the smallest ball whose top eigenvalue reaches n - 2d + 1
and multiplies its exact size by n, attaching the eigenvalue certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

from .ball_spectra import lambda_ball_exact, lambda_for_radius_recurrence, min_radius_for_lambda


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound plus the inputs and certificate that produced it."""

    kind: str  # "finite-code" | "rate" | "covering-radius" | "comparator"
    n: Optional[int]
    d: Optional[int]
    delta: Optional[float]
    r_star: Optional[int]
    lambda_used: Optional[float]
    value: Union[int, float]
    certificate: Optional[dict]

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "d": self.d,
            "delta": self.delta,
            "r_star": self.r_star,
            "lambda": self.lambda_used,
            "bound": self.value,
            "certificate": self.certificate,
        }


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1-x) log2(1-x), with H(0) = H(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def ball_size(n: int, r: int) -> int:
    """Exact number of points in a Hamming ball of radius r (big integer)."""
    if not 0 <= r <= n:
        raise ValueError(f"radius must be in [0, n], got r={r} n={n}")
    return sum(math.comb(n, i) for i in range(r + 1))


def first_lp_rate(delta: float) -> float:
    """Asymptotic rate bound H(1/2 - sqrt(delta (1 - delta))).

    Strictly decreasing from 1 at delta = 0 down to 0 at delta = 1/2.
    """
    if not 0.0 <= delta <= 0.5:
        raise ValueError(f"relative distance must lie in [0, 1/2], got {delta}")
    return binary_entropy(0.5 - math.sqrt(delta * (1.0 - delta)))


def finite_code_bound(n: int, d: int) -> BoundReport:
    """Certified finite bound: |C| <= n * |B(r*)| for distance-d codes.

    r* is the smallest radius whose ball eigenvalue reaches n - 2d + 1; for
    d > n/2 the target is nonpositive, a single point suffices, and the
    bound degrades to |C| <= n.  The attached certificate is the witness
    profile proving the eigenvalue lower bound at r*.
    """
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n} d={d}")
    target = float(n - 2 * d + 1)
    r_star = min_radius_for_lambda(n, max(target, 0.0))
    witness = lambda_for_radius_recurrence(n, r_star)
    return BoundReport(
        kind="finite-code",
        n=n,
        d=d,
        delta=None,
        r_star=r_star,
        lambda_used=lambda_ball_exact(n, r_star),
        value=n * ball_size(n, r_star),
        certificate=witness.to_dict(),
    )


def rate_report(delta: float) -> BoundReport:
    """Asymptotic rate bound packaged as a report (for uniform output)."""
    return BoundReport(
        kind="rate",
        n=None,
        d=None,
        delta=delta,
        r_star=None,
        lambda_used=None,
        value=first_lp_rate(delta),
        certificate=None,
    )


def essential_covering_radius_bound(n: int, d: int) -> tuple[int, float]:
    """Radius certified to cover a 1/n fraction around any dual-distance-d code.

    Returns (r_finite, r_asymptotic): the rigorous finite radius (smallest
    ball eigenvalue reaching n - 2d + 1) and the closed form
    n/2 - sqrt(d (n - d)), reported as a real and never floored.  The finite
    value drifts toward the asymptote as n grows; the gap is monitored in
    tests rather than asserted against an invented constant.
    """
    if not (1 <= d and 2 * d <= n):
        raise ValueError(f"asymptotic form needs 1 <= d <= n/2, got n={n} d={d}")
    target = float(n - 2 * d + 1)
    r_finite = min_radius_for_lambda(n, max(target, 0.0))
    r_asymptotic = n / 2.0 - math.sqrt(d * (n - d))
    return r_finite, r_asymptotic


def tietavainen_bound(n: int, d: int) -> float:
    """Comparator covering-radius bound n/2 - sqrt((d/2)(n - d/2)).

    Bounds the true covering radius of a dual-distance-d code, which
    dominates the essential covering radius, so for d <= n/2 this value
    always exceeds the asymptotic essential bound.
    """
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n} d={d}")
    half = d / 2.0
    return n / 2.0 - math.sqrt(half * (n - half))


def rate_table(deltas, out_format: Optional[str] = None):
    """Rows (delta, first_lp_rate(delta)); validates each delta.

    out_format None returns the rows as tuples; "csv" and "json" return a
    rendered string (reals at 9 significant digits, matching the CLI).
    """
    rows = [(float(d), first_lp_rate(float(d))) for d in deltas]
    if out_format is None:
        return rows
    if out_format == "csv":
        return "delta,rate\n" + "".join(f"{d:.9g},{r:.9g}\n" for d, r in rows)
    if out_format == "json":
        import json

        return json.dumps(
            [[float(f"{d:.9g}"), float(f"{r:.9g}")] for d, r in rows]
        )
    raise ValueError(f"unknown format {out_format!r}")
