"""Spectral regions and the operator-class verdicts they decide.

Each operator class corresponds to a closed region of the positive quadrant;
the operator belongs to the class exactly when every joint spectral point
lies in the region.  With D+ the open unit disk quarter, T+ the unit circle
arc and L the vertical line s = 1:

=================  ====================================================
Subnormal          closed disk or the axis t = 0
Contraction        closed disk
Expansion          complement of D+
Isometry           T+
TwoIsometry        T+ or L
MContractive(m)    m = 1: disk; m odd: disk or L; m even: disk or s >= 1
MExpansive(m)      m odd: complement of D+; m even: ... and s <= 1
MIsometric(m)      m = 1: T+; m >= 2: T+ or L
DualSubnormal      complement of D+ or the axis t = 0
=================  ====================================================

``che`` (complete hyperexpansivity), ``chc`` (complete hypercontractivity)
and ``delta-regular`` are aliases for MExpansive(2), Contraction and
Expansion; they are resolved at construction and the original token is kept
on the id.  Membership is tested with an ``eps`` band around each frontier,
and a point on the band classifies as ``boundary``, which still counts as
inside for the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import BrownianCriteriaMismatch, EmptySpectrum, NotQuasiBrownian
from .jointspec import JointSpectrum, SpectralPoint, inner_radius
from .linalg import DEFAULT_EPS
from .model import AtomKind, AtomModel, QAtom, atom_spectra


class RegionKind(Enum):
    SUBNORMAL = "subnormal"
    CONTRACTION = "contraction"
    EXPANSION = "expansion"
    ISOMETRY = "isometry"
    TWO_ISOMETRY = "two-isometry"
    M_CONTRACTIVE = "m-contractive"
    M_EXPANSIVE = "m-expansive"
    M_ISOMETRIC = "m-isometric"
    DUAL_SUBNORMAL = "dual-subnormal"


_PARAMETRIC = {RegionKind.M_CONTRACTIVE, RegionKind.M_EXPANSIVE, RegionKind.M_ISOMETRIC}

_ALIASES: dict[str, tuple[RegionKind, int | None]] = {
    "che": (RegionKind.M_EXPANSIVE, 2),
    "chc": (RegionKind.CONTRACTION, None),
    "delta-regular": (RegionKind.EXPANSION, None),
}


@dataclass(frozen=True)
class RegionId:
    kind: RegionKind
    m: int | None = None
    alias: str | None = None

    def __post_init__(self) -> None:
        if self.kind in _PARAMETRIC:
            if self.m is None or self.m < 1:
                raise ValueError(f"{self.kind.value} needs an order m >= 1")
        elif self.m is not None:
            raise ValueError(f"{self.kind.value} takes no order")

    @property
    def token(self) -> str:
        if self.kind in _PARAMETRIC:
            return f"{self.kind.value}:{self.m}"
        return self.kind.value

    @classmethod
    def parse(cls, token: str) -> "RegionId":
        tok = token.strip().lower()
        if tok in _ALIASES:
            kind, m = _ALIASES[tok]
            return cls(kind, m, alias=tok)
        name, _, arg = tok.partition(":")
        for kind in RegionKind:
            if kind.value == name:
                if kind in _PARAMETRIC:
                    if not arg:
                        raise ValueError(f"region {name!r} needs an order, e.g. {name}:2")
                    try:
                        m = int(arg)
                    except ValueError:
                        raise ValueError(f"bad order {arg!r} for region {name!r}") from None
                    return cls(kind, m)
                if arg:
                    raise ValueError(f"region {name!r} takes no order")
                return cls(kind)
        raise ValueError(f"unknown region token {token!r}")


SUBNORMAL = RegionId(RegionKind.SUBNORMAL)
CONTRACTION = RegionId(RegionKind.CONTRACTION)
EXPANSION = RegionId(RegionKind.EXPANSION)
ISOMETRY = RegionId(RegionKind.ISOMETRY)
TWO_ISOMETRY = RegionId(RegionKind.TWO_ISOMETRY)
DUAL_SUBNORMAL = RegionId(RegionKind.DUAL_SUBNORMAL)


def m_contractive(m: int) -> RegionId:
    return RegionId(RegionKind.M_CONTRACTIVE, m)


def m_expansive(m: int) -> RegionId:
    return RegionId(RegionKind.M_EXPANSIVE, m)


def m_isometric(m: int) -> RegionId:
    return RegionId(RegionKind.M_ISOMETRIC, m)


def completely_hyperexpansive() -> RegionId:
    return RegionId(RegionKind.M_EXPANSIVE, 2, alias="che")


def completely_hypercontractive() -> RegionId:
    return RegionId(RegionKind.CONTRACTION, alias="chc")


def delta_regular() -> RegionId:
    return RegionId(RegionKind.EXPANSION, alias="delta-regular")


def _member(s: float, t: float, region: RegionId, slack: float) -> bool:
    k = region.kind
    m = region.m
    rr = s * s + t * t
    disk = rr <= 1.0 + slack
    outside = rr >= 1.0 - slack
    circle = abs(rr - 1.0) <= slack
    axis = t <= slack
    line = abs(s - 1.0) <= slack
    if k is RegionKind.SUBNORMAL:
        return disk or axis
    if k is RegionKind.CONTRACTION:
        return disk
    if k is RegionKind.EXPANSION:
        return outside
    if k is RegionKind.ISOMETRY:
        return circle
    if k is RegionKind.TWO_ISOMETRY:
        return circle or line
    if k is RegionKind.M_CONTRACTIVE:
        if m == 1:
            return disk
        if m % 2 == 1:
            return disk or line
        return disk or s >= 1.0 - slack
    if k is RegionKind.M_EXPANSIVE:
        if m % 2 == 1:
            return outside
        return outside and s <= 1.0 + slack
    if k is RegionKind.M_ISOMETRIC:
        if m == 1:
            return circle
        return circle or line
    if k is RegionKind.DUAL_SUBNORMAL:
        return outside or axis
    raise AssertionError(f"unhandled region kind {k!r}")


def region_membership(point, region: RegionId, eps: float = DEFAULT_EPS) -> str:
    """``inside`` / ``boundary`` / ``outside`` for one point.

    ``boundary`` means within the eps band of the region frontier; verdicts
    count it as inside.
    """
    if isinstance(point, SpectralPoint):
        s, t = point.s, point.t
    else:
        s, t = (float(v) for v in tuple(point)[:2])
    if not _member(s, t, region, eps):
        return "outside"
    if _member(s, t, region, 0.0):
        return "inside"
    return "boundary"


@dataclass(frozen=True)
class ClassificationReport:
    region: RegionId
    verdict: bool
    per_point: tuple[tuple[SpectralPoint, str], ...]
    violators: tuple[SpectralPoint, ...]


def classify(sigma: JointSpectrum, region: RegionId, eps: float = DEFAULT_EPS) -> ClassificationReport:
    """Verdict for one operator class: every spectral point inside the region."""
    if not sigma.points:
        raise EmptySpectrum("cannot classify an empty spectrum")
    statuses = tuple((p, region_membership(p, region, eps)) for p in sigma.points)
    violators = tuple(p for p, st in statuses if st == "outside")
    return ClassificationReport(region, not violators, statuses, violators)


def left_invertibility_margin(sigma: JointSpectrum) -> float:
    """Distance of the spectrum from the origin; positive iff left-invertible."""
    return inner_radius(sigma)


@dataclass(frozen=True)
class BrownianReport:
    quasi_brownian: bool
    brownian: bool
    violators: tuple[SpectralPoint, ...]


@dataclass(frozen=True)
class BrownianDecomposition:
    """Atom partition of H2: unitary part, shift part, spherical-isometry part.

    ``shift_flags`` lists the shift-part atoms carrying a nonzero |E| weight;
    the model is Brownian exactly when there are none.
    """

    h_u: tuple[QAtom, ...]
    h_s: tuple[QAtom, ...]
    h_si: tuple[QAtom, ...]
    unclassifiable: tuple[QAtom, ...]
    shift_flags: tuple[QAtom, ...]


def _quasi_verdict(two: JointSpectrum, eps: float) -> ClassificationReport:
    return classify(two, TWO_ISOMETRY, eps)


def brownian_decomposition(m: AtomModel, eps: float = DEFAULT_EPS) -> BrownianDecomposition:
    """Structural split of a quasi-Brownian atom model.

    Unitary atoms with s = 1 feed the unitary part, shift atoms with s = 1
    the shift part (flagged when t > eps), atoms on the circle s^2 + t^2 = 1
    with s != 1 the spherical-isometry part; overlaps resolve in that order.
    Raises :class:`NotQuasiBrownian` when the 2-d spectrum fails the
    two-isometry region test.
    """
    two, _ = atom_spectra(m)
    if not _quasi_verdict(two, eps).verdict:
        raise NotQuasiBrownian("structural decomposition needs a quasi-Brownian model")
    h_u: list[QAtom] = []
    h_s: list[QAtom] = []
    h_si: list[QAtom] = []
    other: list[QAtom] = []
    flags: list[QAtom] = []
    for at in m.atoms:
        on_line = abs(at.s - 1.0) <= eps
        if at.kind is AtomKind.UNITARY and on_line:
            h_u.append(at)
        elif at.kind is AtomKind.SHIFT and on_line:
            h_s.append(at)
            if at.t > eps:
                flags.append(at)
        elif abs(at.s * at.s + at.t * at.t - 1.0) <= eps:
            h_si.append(at)
        else:
            # unreachable once the quasi-Brownian test passed
            other.append(at)
    return BrownianDecomposition(tuple(h_u), tuple(h_s), tuple(h_si),
                                 tuple(other), tuple(flags))


def classify_brownian(m: AtomModel, eps: float = DEFAULT_EPS) -> BrownianReport:
    """Quasi-Brownian and Brownian verdicts for an atom model.

    Quasi-Brownian is the two-isometry region test on the 2-d spectrum.
    Brownian additionally needs every 3-d point (s, t, r) to satisfy
    s^2 + t^2 = 1 or r = 1 within eps.  The structural route (no shift atom
    carries |E| weight) is evaluated as well; the two must agree, otherwise
    the input sits on an ambiguous eps band and
    :class:`BrownianCriteriaMismatch` is raised.

    A plain pair model cannot answer the Brownian question: it decides
    quasi-Brownian only, the |Q*| data lives in the atoms.
    """
    if not isinstance(m, AtomModel):
        raise TypeError(
            "Brownian classification needs an atom model; a commuting pair "
            "decides quasi-Brownian only (pass its spectrum to classify with "
            "the two-isometry region)"
        )
    two, three = atom_spectra(m)
    quasi_report = _quasi_verdict(two, eps)
    quasi = quasi_report.verdict
    violators = list(quasi_report.violators)
    spectral = quasi
    for p in three.points:
        if abs(p.s * p.s + p.t * p.t - 1.0) <= eps or abs(p.r - 1.0) <= eps:
            continue
        violators.append(p)
        spectral = False
    if quasi:
        structural = not brownian_decomposition(m, eps).shift_flags
        if structural != spectral:
            raise BrownianCriteriaMismatch(
                "spectral and structural Brownian tests disagree; the model "
                "sits on an eps-band overlap between the line s = 1 and the "
                "unit circle"
            )
    return BrownianReport(quasi, spectral, tuple(violators))
