"""Subnormality intervals of the two entry pencils.

Scaling the E entry by alpha >= 0 scales the t coordinates of the joint
spectrum; scaling Q scales the s coordinates.  The set of alpha for which
the scaled model stays subnormal is an interval whose right endpoint has a
closed form over the relevant part of the spectrum:

* E pencil:  beta = min over points with t > eps of sqrt((1 - s^2) / t^2),
  defined when those points all have s <= 1;
* Q pencil:  beta = min over points with s, t > eps of sqrt((1 - t^2) / s^2),
  nonempty only when max t <= 1, and all of R+ when |Q||E| = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from . import jointspec, regions
from .errors import (
    EmptyFlatPart,
    EmptySharpPart,
    EmptySpectrum,
    ENormExceedsOne,
    PreconditionViolated,
)
from .jointspec import JointSpectrum, SpectralPoint
from .linalg import DEFAULT_EPS


class IntervalKind(Enum):
    EMPTY = "empty"
    DEGENERATE_ZERO = "degenerate-zero"
    CLOSED = "closed"
    ALL_OF_R_PLUS = "all-of-r-plus"


@dataclass(frozen=True)
class SubnormalityInterval:
    """{alpha >= 0 : the scaled pencil member is subnormal}."""

    kind: IntervalKind
    beta: float | None = None

    def __post_init__(self) -> None:
        if self.kind is IntervalKind.CLOSED:
            if self.beta is None or self.beta <= 0.0:
                raise ValueError("a closed interval needs a positive right endpoint")
        elif self.beta is not None:
            raise ValueError(f"{self.kind.value} carries no endpoint")

    def contains(self, alpha: float) -> bool:
        if alpha < 0.0:
            return False
        if self.kind is IntervalKind.EMPTY:
            return False
        if self.kind is IntervalKind.DEGENERATE_ZERO:
            return alpha == 0.0
        if self.kind is IntervalKind.ALL_OF_R_PLUS:
            return True
        return alpha <= self.beta


def sharp_part(sigma: JointSpectrum, eps: float = DEFAULT_EPS) -> tuple[SpectralPoint, ...]:
    """Points with t > eps (where the E entry acts)."""
    return tuple(p for p in sigma.points if p.t > eps)


def flat_part(sigma: JointSpectrum, eps: float = DEFAULT_EPS) -> tuple[SpectralPoint, ...]:
    """Points with both coordinates positive beyond eps."""
    return tuple(p for p in sigma.points if p.s > eps and p.t > eps)


def beta_dagger(sigma: JointSpectrum, eps: float = DEFAULT_EPS) -> float:
    """Right endpoint of the E-pencil interval: min sqrt((1-s^2)/t^2) over t > eps."""
    sharp = sharp_part(sigma, eps)
    if not sharp:
        raise EmptySharpPart("the E entry vanishes; every scaling is subnormal")
    if any(p.s > 1.0 + eps for p in sharp):
        raise PreconditionViolated("the endpoint formula needs s <= 1 wherever t > 0")
    return min(math.sqrt(max(1.0 - p.s * p.s, 0.0)) / p.t for p in sharp)


def sub_E(sigma: JointSpectrum, eps: float = DEFAULT_EPS) -> SubnormalityInterval:
    """Subnormality interval of alpha -> [[V, alpha E], [0, Q]].

    Always contains 0 (the alpha = 0 member is quasinormal).  All of R+ when
    the E entry vanishes on the spectrum; degenerate {0} when some point with
    t > 0 has s >= 1.
    """
    if not sigma.points:
        raise EmptySpectrum("the pencil needs a nonempty spectrum")
    sharp = sharp_part(sigma, eps)
    if not sharp:
        return SubnormalityInterval(IntervalKind.ALL_OF_R_PLUS)
    if any(p.s > 1.0 + eps for p in sharp):
        return SubnormalityInterval(IntervalKind.DEGENERATE_ZERO)
    beta = min(math.sqrt(max(1.0 - p.s * p.s, 0.0)) / p.t for p in sharp)
    if beta <= 0.0:
        return SubnormalityInterval(IntervalKind.DEGENERATE_ZERO)
    return SubnormalityInterval(IntervalKind.CLOSED, beta)


def beta_sub(sigma: JointSpectrum, eps: float = DEFAULT_EPS) -> float:
    """Right endpoint of the Q-pencil interval: min sqrt((1-t^2)/s^2) over s,t > eps."""
    if any(p.t > 1.0 + eps for p in sigma.points):
        raise ENormExceedsOne("no Q scaling is subnormal once |E| exceeds 1")
    flat = flat_part(sigma, eps)
    if not flat:
        raise EmptyFlatPart("the product |Q||E| vanishes; every scaling is subnormal")
    return min(math.sqrt(max(1.0 - p.t * p.t, 0.0)) / p.s for p in flat)


def sub_Q(sigma: JointSpectrum, eps: float = DEFAULT_EPS) -> SubnormalityInterval:
    """Subnormality interval of alpha -> [[V, E], [0, alpha Q]].

    Empty when max t > 1; all of R+ when additionally no point has both
    coordinates positive (|Q||E| = 0, i.e. EQ = 0); a closed interval
    otherwise.
    """
    if not sigma.points:
        raise EmptySpectrum("the pencil needs a nonempty spectrum")
    if any(p.t > 1.0 + eps for p in sigma.points):
        return SubnormalityInterval(IntervalKind.EMPTY)
    flat = flat_part(sigma, eps)
    if not flat:
        return SubnormalityInterval(IntervalKind.ALL_OF_R_PLUS)
    beta = min(math.sqrt(max(1.0 - p.t * p.t, 0.0)) / p.s for p in flat)
    if beta <= 0.0:
        return SubnormalityInterval(IntervalKind.DEGENERATE_ZERO)
    return SubnormalityInterval(IntervalKind.CLOSED, beta)


def pencil_scan(emb, which: str, alphas: Iterable[float],
                eps: float = DEFAULT_EPS) -> list[tuple[float, bool]]:
    """Subnormality verdicts along a grid of scalings of one entry.

    ``which`` is ``"e"`` or ``"q"``.  The spectrum is computed once and the
    scaling acts on its t (respectively s) coordinates.
    """
    token = which.strip().lower()
    if token not in ("e", "q"):
        raise ValueError(f"which must be 'e' or 'q', got {which!r}")
    sigma = emb if isinstance(emb, JointSpectrum) else jointspec.joint_spectrum(emb, eps=eps)
    out: list[tuple[float, bool]] = []
    for alpha in alphas:
        a = float(alpha)
        if a < 0.0:
            raise ValueError("pencil parameters are nonnegative")
        if token == "e":
            scaled = JointSpectrum(tuple(SpectralPoint(p.s, a * p.t, None, p.mult)
                                         for p in sigma.points), sigma.dedup_tol)
        else:
            scaled = JointSpectrum(tuple(SpectralPoint(a * p.s, p.t, None, p.mult)
                                         for p in sigma.points), sigma.dedup_tol)
        verdict = regions.classify(scaled, regions.SUBNORMAL, eps).verdict
        out.append((a, verdict))
    return out
