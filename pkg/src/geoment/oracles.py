"""Closed-form overlaps for states whose nearest product state is known."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidParams
from .partition import Partition


def dicke_overlap_oracle(n: int, k: int) -> float:
    """Overlap of S(n, k) (k zeros) with its closest product state."""
    if n < 1 or not 0 <= k <= n:
        raise InvalidParams(f"need 0 <= k <= n and n >= 1, got n={n}, k={k}")
    # 0**0 == 1 keeps the separable endpoints exact; sorting the two powers
    # makes k and n-k give bit-identical results
    lo, hi = sorted(((k / n) ** (k / 2), ((n - k) / n) ** ((n - k) / 2)))
    return math.sqrt(math.comb(n, k)) * lo * hi


def qudit_overlap_oracle(n: int) -> float:
    """Overlap for the n-party qudit state with one party raised; independent of d."""
    if n < 2:
        raise InvalidParams(f"need n >= 2, got {n}")
    return math.sqrt(n) * (1 / n) ** 0.5 * ((n - 1) / n) ** ((n - 1) / 2)


@dataclass(frozen=True)
class WOverlapContext:
    s: float
    t: float
    theta: float
    lambda_: float

    @property
    def entanglement(self) -> float:
        return 1.0 - self.lambda_ ** 2


def w_cubic_coefficients(s: float) -> tuple[float, float, float, float]:
    """Coefficients (t^3, t^2, t, 1) of the stationarity condition in t = tan(theta).

    Setting d/dtheta of sin(2 theta) (a cos(theta) + b sin(theta)) to zero,
    with a = sqrt(s), b = sqrt(1-s), and dividing by cos^3 gives
    b t^3 + 2a t^2 - 2b t - a = 0.
    """
    a, b = math.sqrt(s), math.sqrt(1 - s)
    return b, 2 * a, -2 * b, -a


def w_cubic_residual(s: float, t: float) -> float:
    c3, c2, c1, c0 = w_cubic_coefficients(s)
    return abs(((c3 * t + c2) * t + c1) * t + c0)


def _w_lambda(s: float, theta: float) -> float:
    return (math.sqrt(3) / 2 * (math.sqrt(s) * math.cos(theta) + math.sqrt(1 - s) * math.sin(theta))
            * math.sin(2 * theta))


def w_superposition_overlap_oracle(s: float) -> WOverlapContext:
    """Overlap of sqrt(s)|W> + sqrt(1-s)|W~> from the real roots of the cubic.

    The roots come from ``np.roots`` (eigenvalues of the companion matrix,
    which drops a vanishing leading coefficient at s = 1). Of the real roots
    the one with the largest overlap is returned.
    """
    if not 0 <= s <= 1:
        raise InvalidParams(f"s must lie in [0, 1], got {s}")
    coeffs = w_cubic_coefficients(s)
    roots = np.roots(coeffs)
    real = [float(r.real) for r in roots if abs(r.imag) <= 1e-9 * max(1.0, abs(r))]
    best = None
    for t in real:
        t = _polish(s, t)
        theta = math.atan(t)
        lam = abs(_w_lambda(s, theta))
        if best is None or lam > best.lambda_:
            best = WOverlapContext(s=s, t=t, theta=theta, lambda_=lam)
    assert best is not None  # a real cubic always has a real root
    return best


def _polish(s: float, t: float) -> float:
    # one or two Newton steps bring companion-matrix roots to full precision
    c3, c2, c1, c0 = w_cubic_coefficients(s)
    for _ in range(3):
        f = ((c3 * t + c2) * t + c1) * t + c0
        df = (3 * c3 * t + 2 * c2) * t + c1
        if df == 0:
            break
        t -= f / df
    return t


def weighted_w_overlap_oracle(gammas: Sequence[float], partition: Partition) -> float:
    """Squared overlap of a weighted W state across a bipartition.

    Party ``g`` of the partition is the party whose excitation carries
    ``gammas[g]``. Across ``A|B`` the state is a sum of two orthogonal
    product terms with weights sum_A gamma^2 and sum_B gamma^2, so the
    squared overlap is the larger of the two over the total.
    """
    g2 = [float(g) ** 2 for g in gammas]
    if len(g2) < 2 or any(not g > 0 for g in gammas):
        raise InvalidParams("need at least two positive weights")
    if partition.n_parties != len(g2) or len(partition.blocks) != 2:
        raise InvalidParams(f"{partition} is not a bipartition of {len(g2)} parties")
    total = sum(g2)
    return max(sum(g2[i] for i in blk) for blk in partition.blocks) / total
