"""Potential families on the line: evaluation, rescaling, classification.

All families are non-negative and bounded.  The admissible shapes are a
fixed set of closed-form families plus finite piecewise-constant profiles;
there is deliberately no expression parser, so every classification flag
is decidable from the parameters alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np


@dataclass(frozen=True)
class Zero:
    """The zero potential (free Dirichlet Laplacian benchmark)."""


@dataclass(frozen=True)
class Step:
    """v(x) = v0 on [-b, b], zero outside."""

    v0: float
    b: float

    def __post_init__(self):
        if not (self.v0 >= 0 and math.isfinite(self.v0)):
            raise ValueError(f"step height must be finite and >= 0, got {self.v0}")
        if not (self.b > 0 and math.isfinite(self.b)):
            raise ValueError(f"step half-width must be finite and > 0, got {self.b}")


@dataclass(frozen=True)
class InverseSquareTail:
    """v(x) = 1/x^2 for x >= 1, zero otherwise (borderline decay, one-sided)."""


@dataclass(frozen=True)
class PowerLawDecay:
    """v(x) = C / (1 + |x|)^alpha, a smooth representative of C/|x|^alpha decay."""

    C: float
    alpha: float

    def __post_init__(self):
        if not (self.C >= 0 and math.isfinite(self.C)):
            raise ValueError(f"amplitude must be finite and >= 0, got {self.C}")
        if not (self.alpha > 0 and math.isfinite(self.alpha)):
            raise ValueError(f"decay exponent must be finite and > 0, got {self.alpha}")


@dataclass(frozen=True)
class SymmetricBump:
    """v(x) = v0 * exp(-x^2 / s^2), the smooth symmetric single-well representative."""

    v0: float
    s: float

    def __post_init__(self):
        if not (self.v0 >= 0 and math.isfinite(self.v0)):
            raise ValueError(f"bump height must be finite and >= 0, got {self.v0}")
        if not (self.s > 0 and math.isfinite(self.s)):
            raise ValueError(f"bump width must be finite and > 0, got {self.s}")


@dataclass(frozen=True)
class PiecewiseConstant:
    """Finitely many disjoint constant segments (x_left, x_right, value >= 0)."""

    segments: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        segs = tuple(tuple(float(v) for v in seg) for seg in self.segments)
        object.__setattr__(self, "segments", segs)
        prev_right = -math.inf
        for xl, xr, val in segs:
            if not (math.isfinite(xl) and math.isfinite(xr) and xl < xr):
                raise ValueError(f"segment ({xl}, {xr}) is not a finite interval")
            if not (val >= 0 and math.isfinite(val)):
                raise ValueError(f"segment value must be finite and >= 0, got {val}")
            if xl < prev_right:
                raise ValueError("segments must be sorted and disjoint")
            prev_right = xr


Potential = Union[Zero, Step, InverseSquareTail, PowerLawDecay, SymmetricBump, PiecewiseConstant]

FAMILY_NAMES = {
    Zero: "zero",
    Step: "step",
    InverseSquareTail: "inverse-square-tail",
    PowerLawDecay: "power-law",
    SymmetricBump: "bump",
    PiecewiseConstant: "piecewise",
}


@dataclass(frozen=True)
class PotentialClass:
    """Which hypothesis classes a potential provably belongs to.

    ``short_range_C`` is the smallest closed-form constant with
    v(x) <= C/x^2; ``decay_alpha`` is the decay exponent (``inf`` for
    compactly supported families, the literal exponent otherwise).
    Unknown memberships are left unset, never guessed.
    """

    compact_support: bool
    short_range_C: Optional[float]
    decay_alpha: Optional[float]
    symmetric_single_well: bool


def evaluate(p: Potential, x):
    """Pointwise value v(x); accepts scalars or numpy arrays."""
    if isinstance(p, Zero):
        return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
    if isinstance(p, Step):
        inside = np.abs(x) <= p.b
        if np.ndim(x):
            return np.where(inside, p.v0, 0.0)
        return p.v0 if inside else 0.0
    if isinstance(p, InverseSquareTail):
        xa = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            vals = np.where(xa >= 1.0, 1.0 / np.maximum(xa, 1.0) ** 2, 0.0)
        return vals if np.ndim(x) else float(vals)
    if isinstance(p, PowerLawDecay):
        vals = p.C / (1.0 + np.abs(x)) ** p.alpha
        return vals if np.ndim(x) else float(vals)
    if isinstance(p, SymmetricBump):
        vals = p.v0 * np.exp(-np.square(np.asarray(x, dtype=float) / p.s))
        return vals if np.ndim(x) else float(vals)
    if isinstance(p, PiecewiseConstant):
        xa = np.asarray(x, dtype=float)
        vals = np.zeros_like(xa)
        for xl, xr, val in p.segments:
            vals = np.where((xa >= xl) & (xa <= xr), val, vals)
        return vals if np.ndim(x) else float(vals)
    raise TypeError(f"not a potential: {p!r}")


def scaled_evaluate(p: Potential, L: float, x):
    """The rescaled potential w_L(x) = L^2 * v(L*x) on the unit interval."""
    if L <= 0:
        raise ValueError(f"length must be > 0, got {L}")
    return L * L * evaluate(p, L * np.asarray(x) if np.ndim(x) else L * x)


def _power_law_short_range(C: float, alpha: float) -> Optional[float]:
    # sup_x x^2 * C/(1+|x|)^alpha, finite only for alpha >= 2
    if alpha < 2:
        return None
    if alpha == 2:
        return C
    xstar = 2.0 / (alpha - 2.0)
    return C * xstar * xstar / (1.0 + xstar) ** alpha


def _piecewise_symmetric(segments) -> bool:
    mirrored = sorted((-xr, -xl, val) for xl, xr, val in segments)
    return mirrored == sorted(segments)


def _piecewise_single_well_left(segments) -> bool:
    # Values met when walking x from -inf to 0 (zero gaps included) must
    # be non-decreasing.
    profile = [0.0]
    prev_right = -math.inf
    for xl, xr, val in segments:
        if xl >= 0:
            break
        if xl > prev_right and prev_right > -math.inf:
            profile.append(0.0)
        profile.append(val)
        prev_right = min(xr, 0.0)
    if -math.inf < prev_right < 0:
        profile.append(0.0)  # zero gap between the last segment and 0
    return all(a <= b for a, b in zip(profile, profile[1:]))


def classify(p: Potential) -> PotentialClass:
    """Decide hypothesis-class membership from the family and parameters."""
    if isinstance(p, Zero):
        return PotentialClass(True, 0.0, math.inf, True)
    if isinstance(p, Step):
        return PotentialClass(True, p.v0 * p.b * p.b, math.inf, True)
    if isinstance(p, InverseSquareTail):
        return PotentialClass(False, 1.0, 2.0, False)
    if isinstance(p, PowerLawDecay):
        return PotentialClass(False, _power_law_short_range(p.C, p.alpha), p.alpha, True)
    if isinstance(p, SymmetricBump):
        return PotentialClass(True if p.v0 == 0 else False, p.v0 * p.s * p.s / math.e, math.inf, True)
    if isinstance(p, PiecewiseConstant):
        c = max((val * max(xl * xl, xr * xr) for xl, xr, val in p.segments), default=0.0)
        symmetric = _piecewise_symmetric(p.segments)
        single_well = symmetric and _piecewise_single_well_left(p.segments)
        return PotentialClass(True, c, math.inf, single_well)
    raise TypeError(f"not a potential: {p!r}")


def is_symmetric(p: Potential) -> bool:
    """Whether v(-x) = v(x) holds identically."""
    if isinstance(p, (Zero, Step, PowerLawDecay, SymmetricBump)):
        return True
    if isinstance(p, InverseSquareTail):
        return False
    return _piecewise_symmetric(p.segments)


def is_zero(p: Potential) -> bool:
    if isinstance(p, Zero):
        return True
    if isinstance(p, Step):
        return p.v0 == 0
    if isinstance(p, SymmetricBump):
        return p.v0 == 0
    if isinstance(p, PowerLawDecay):
        return p.C == 0
    if isinstance(p, PiecewiseConstant):
        return all(val == 0 for _, _, val in p.segments)
    return False


def sup_value(p: Potential) -> float:
    """Global supremum of v, used for rigorous eigenvalue brackets."""
    if isinstance(p, Zero):
        return 0.0
    if isinstance(p, Step):
        return p.v0
    if isinstance(p, InverseSquareTail):
        return 1.0
    if isinstance(p, PowerLawDecay):
        return p.C
    if isinstance(p, SymmetricBump):
        return p.v0
    return max((val for _, _, val in p.segments), default=0.0)


def breakpoints(p: Potential) -> list[float]:
    """Jump locations of v in physical coordinates (empty for smooth families)."""
    if isinstance(p, Step):
        return [-p.b, p.b] if p.v0 > 0 else []
    if isinstance(p, InverseSquareTail):
        return [1.0]
    if isinstance(p, PiecewiseConstant):
        pts = []
        for xl, xr, val in p.segments:
            if val > 0:
                pts.extend((xl, xr))
        return sorted(set(pts))
    return []


def resolution_intervals(p: Potential) -> list[tuple[float, float]]:
    """Intervals (physical coordinates) the solver grid must resolve."""
    if isinstance(p, Step):
        return [(-p.b, p.b)] if p.v0 > 0 else []
    if isinstance(p, InverseSquareTail):
        return [(1.0, 2.0)]
    if isinstance(p, PowerLawDecay):
        return [(-1.0, 1.0)] if p.C > 0 else []
    if isinstance(p, SymmetricBump):
        return [(-p.s, p.s)] if p.v0 > 0 else []
    if isinstance(p, PiecewiseConstant):
        return [(xl, xr) for xl, xr, val in p.segments if val > 0]
    return []


def describe(p: Potential) -> str:
    """Stable one-line descriptor, used in reports and CSV metadata."""
    if isinstance(p, Zero):
        return "zero"
    if isinstance(p, Step):
        return f"step(v0={p.v0!r},b={p.b!r})"
    if isinstance(p, InverseSquareTail):
        return "inverse-square-tail"
    if isinstance(p, PowerLawDecay):
        return f"power-law(C={p.C!r},alpha={p.alpha!r})"
    if isinstance(p, SymmetricBump):
        return f"bump(v0={p.v0!r},s={p.s!r})"
    segs = ";".join(f"{xl!r}:{xr!r}:{val!r}" for xl, xr, val in p.segments)
    return f"piecewise({segs})"


def make_potential(family: str, **params) -> Potential:
    """Construct a potential from a family tag and keyword parameters."""
    family = family.strip().lower()
    try:
        if family == "zero":
            return Zero()
        if family == "step":
            return Step(v0=float(params["v0"]), b=float(params["b"]))
        if family in ("inverse-square-tail", "tail"):
            return InverseSquareTail()
        if family in ("power-law", "powerlaw"):
            return PowerLawDecay(C=float(params["C"]), alpha=float(params["alpha"]))
        if family == "bump":
            return SymmetricBump(v0=float(params["v0"]), s=float(params["s"]))
        if family == "piecewise":
            return PiecewiseConstant(segments=tuple(params["segments"]))
    except KeyError as exc:
        raise ValueError(f"missing parameter {exc} for potential family '{family}'") from None
    raise ValueError(f"unknown potential family '{family}'")
