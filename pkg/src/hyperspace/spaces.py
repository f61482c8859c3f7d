"""Conceptual domains and prototype encoding.

A domain is a named k-dimensional property space: one quasi-orthogonal
basis hypervector per property dimension, plus a value range and a kernel
bandwidth per dimension. A prototype is a point in the domain's normalized
coordinates. Encoding a prototype fractionally exponentiates each basis by
the matching coordinate and binds the results together, which embeds the
point as a k-dimensional radial-basis kernel in a single hypervector:

    encode(p) = fpe(b_1, p_1) (*) fpe(b_2, p_2) (*) ... (*) fpe(b_k, p_k)

Because phase arithmetic is linear, encode is a homomorphism from
coordinate addition to binding: encode(p) (*) encode(q) == encode(p + q)
and inverse(encode(p)) == encode(-p). That is the property that lets
vector-offset analogies be computed entirely in hyperspace.

Two bandwidths matter and are deliberately distinct:

* ``basis_sigma`` (default 2*pi, effectively uniform phases) controls the
  sampled basis phases. Wide phases make distinct bases quasi-orthogonal
  and make the implied encoding kernel sharp, which is what codebook
  decoding wants.
* ``kernel_sigmas`` (default pi/7 per dimension) parameterize the
  closed-form semantic kernel exp(-sigma_i^2 * delta_i^2 / 2) used when
  ranking stored concepts against a query point.

The color preprocessing maps cylindrical hue/saturation/brightness onto
Cartesian coordinates: p1 = cos(hue)*sat/beta, p2 = sin(hue)*sat/beta,
p3 = brightness/beta, with beta = 10 by default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import hdc
from .errors import OrthogonalityError, ValidationError
from .hdc import PhaseDistributionSpec, UnitaryHypervector

__all__ = [
    "DEFAULT_BASIS_SIGMA",
    "DEFAULT_BETA",
    "DEFAULT_KERNEL_SIGMA",
    "DEFAULT_RANGE",
    "ColorHSB",
    "DomainSpec",
    "Prototype",
    "clamp_to_range",
    "encode",
    "hsb_to_point",
    "kernel_similarity",
    "make_domain",
    "orthogonality_threshold",
    "point_to_hsb",
]

DEFAULT_BASIS_SIGMA = hdc.TWO_PI
DEFAULT_KERNEL_SIGMA = math.pi / 7.0
DEFAULT_RANGE = (-10.0, 10.0)
DEFAULT_BETA = 10.0

# |similarity| bound for independent bases, pinned at d = 10^4 where the
# sampling noise std is 1/sqrt(2d) ~ 0.007. Scaled for smaller d so the
# check keeps a constant z-score instead of rejecting almost every valid
# construction at test-sized dimensions.
ORTHOGONALITY_BOUND = 0.05


def orthogonality_threshold(d: int) -> float:
    """Default pairwise |similarity| bound for freshly sampled bases."""
    return ORTHOGONALITY_BOUND * max(1.0, math.sqrt(hdc.DEFAULT_DIMENSION / d))


@dataclass(frozen=True)
class Prototype:
    """A point in a domain's normalized coordinate space."""

    domain: str
    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        coords = tuple(float(c) for c in self.coords)
        if len(coords) < 1:
            raise ValidationError("prototype needs at least one coordinate")
        if not all(math.isfinite(c) for c in coords):
            raise ValidationError(f"prototype coordinates must be finite: {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def k(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class ColorHSB:
    """Color in cylindrical coordinates: hue [0, 360), sat/brightness [0, 100]."""

    hue: float
    saturation: float
    brightness: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.hue < 360.0):
            raise ValidationError(f"hue must be in [0, 360), got {self.hue}")
        if not (0.0 <= self.saturation <= 100.0):
            raise ValidationError(f"saturation must be in [0, 100], got {self.saturation}")
        if not (0.0 <= self.brightness <= 100.0):
            raise ValidationError(f"brightness must be in [0, 100], got {self.brightness}")


@dataclass(frozen=True, eq=False)
class DomainSpec:
    """A named conceptual domain: bases, ranges, and kernel bandwidths.

    Attributes:
        name: Domain identifier.
        dim_names: One name per property dimension.
        ranges: Per-dimension (lo, hi) bounds in normalized units.
        bases: One unitary basis hypervector per dimension.
        basis_sigma: Phase std the bases were sampled with.
        kernel_sigmas: Per-dimension bandwidth of the semantic kernel.
        stream: RNG sub-stream id; basis i was drawn from sub-stream
            (stream, i) of the global seed, so bases regenerate exactly.
    """

    name: str
    dim_names: tuple[str, ...]
    ranges: tuple[tuple[float, float], ...]
    bases: tuple[UnitaryHypervector, ...]
    basis_sigma: float
    kernel_sigmas: tuple[float, ...]
    stream: int = 0

    def __post_init__(self) -> None:
        if not self.name:
            raise ValidationError("domain name must be nonempty")
        k = len(self.dim_names)
        if k < 1:
            raise ValidationError(f"domain {self.name!r} needs k >= 1 dimensions")
        if len(set(self.dim_names)) != k:
            raise ValidationError(f"domain {self.name!r} has duplicate dimension names")
        if len(self.ranges) != k or len(self.bases) != k or len(self.kernel_sigmas) != k:
            raise ValidationError(
                f"domain {self.name!r}: dim_names, ranges, bases, kernel_sigmas "
                f"must all have length k={k}"
            )
        for name, (lo, hi) in zip(self.dim_names, self.ranges):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValidationError(
                    f"domain {self.name!r} dimension {name!r}: need lo < hi, got [{lo}, {hi}]"
                )
        d = self.bases[0].dimension
        for b in self.bases:
            if b.dimension != d:
                raise ValidationError(f"domain {self.name!r}: bases differ in dimension")
        if any(s <= 0 for s in self.kernel_sigmas):
            raise ValidationError(f"domain {self.name!r}: kernel sigmas must be > 0")

    @property
    def k(self) -> int:
        return len(self.dim_names)

    @property
    def dimension(self) -> int:
        return self.bases[0].dimension


def _per_dimension(value, k: int, what: str) -> tuple:
    """Broadcast a scalar-or-sequence argument to one value per dimension."""
    if isinstance(value, (int, float)):
        return (float(value),) * k
    seq = tuple(value)
    if len(seq) != k:
        raise ValidationError(f"{what}: expected 1 or {k} values, got {len(seq)}")
    return seq


def make_domain(
    name: str,
    dim_names: Sequence[str],
    d: int = hdc.DEFAULT_DIMENSION,
    *,
    ranges: Sequence[tuple[float, float]] | tuple[float, float] = DEFAULT_RANGE,
    basis_sigma: float = DEFAULT_BASIS_SIGMA,
    kernel_sigma: float | Sequence[float] = DEFAULT_KERNEL_SIGMA,
    seed: int = 0,
    stream: int = 0,
    ortho_threshold: float | None = None,
) -> DomainSpec:
    """Sample a fresh domain: k bases from independent RNG sub-streams.

    Pairwise basis similarity is validated against ``ortho_threshold``
    (default: 0.05 at d=10^4, scaled as sqrt(10^4/d) below that); a failed
    check raises OrthogonalityError naming the offending pair. This can
    genuinely happen at small d or narrow basis_sigma.
    """
    dim_names = tuple(str(n) for n in dim_names)
    k = len(dim_names)
    if k < 1:
        raise ValidationError(f"domain {name!r} needs at least one dimension")
    if len(ranges) == 2 and isinstance(ranges[0], (int, float)):
        ranges = (tuple(ranges),) * k  # one (lo, hi) applied to every dimension
    ranges = tuple((float(lo), float(hi)) for lo, hi in ranges)
    kernel_sigmas = _per_dimension(kernel_sigma, k, f"domain {name!r} kernel_sigma")

    spec = PhaseDistributionSpec(mean=0.0, std=basis_sigma)
    bases = tuple(
        hdc.sample_gaussian(d, spec, seed=seed, substream=(stream, i)) for i in range(k)
    )

    threshold = orthogonality_threshold(d) if ortho_threshold is None else ortho_threshold
    for i in range(k):
        for j in range(i + 1, k):
            sim = hdc.similarity(bases[i], bases[j])
            if abs(sim) >= threshold:
                raise OrthogonalityError(
                    f"domain {name!r}: bases {dim_names[i]!r} and {dim_names[j]!r} "
                    f"are not quasi-orthogonal (|similarity| = {abs(sim):.4f} >= "
                    f"{threshold:.4f}); increase d or basis_sigma, or reseed"
                )

    return DomainSpec(
        name=str(name),
        dim_names=dim_names,
        ranges=ranges,
        bases=bases,
        basis_sigma=float(basis_sigma),
        kernel_sigmas=kernel_sigmas,
        stream=int(stream),
    )


def hsb_to_point(color: ColorHSB, beta: float = DEFAULT_BETA, domain: str = "color") -> Prototype:
    """Cylindrical color to Cartesian prototype coordinates.

    p1 = cos(hue) * saturation / beta, p2 = sin(hue) * saturation / beta,
    p3 = brightness / beta (hue converted to radians first).
    """
    if beta <= 0:
        raise ValidationError(f"beta must be > 0, got {beta}")
    hue_rad = math.radians(color.hue)
    return Prototype(
        domain=domain,
        coords=(
            math.cos(hue_rad) * color.saturation / beta,
            math.sin(hue_rad) * color.saturation / beta,
            color.brightness / beta,
        ),
    )


def point_to_hsb(point: Prototype, beta: float = DEFAULT_BETA) -> ColorHSB:
    """Inverse of hsb_to_point for 3-coordinate prototypes.

    hue = atan2(p2, p1) in degrees wrapped to [0, 360); saturation =
    beta * sqrt(p1^2 + p2^2); brightness = beta * p3. The degenerate axis
    p1 = p2 = 0 reports hue 0.
    """
    if beta <= 0:
        raise ValidationError(f"beta must be > 0, got {beta}")
    if point.k != 3:
        raise ValidationError(f"point_to_hsb needs 3 coordinates, got {point.k}")
    p1, p2, p3 = point.coords
    hue = 0.0 if (p1 == 0.0 and p2 == 0.0) else math.degrees(math.atan2(p2, p1)) % 360.0
    return ColorHSB(
        hue=hue,
        saturation=beta * math.hypot(p1, p2),
        brightness=beta * p3,
    )


def clamp_to_range(point: Prototype, spec: DomainSpec) -> Prototype:
    """Clamp every coordinate into the domain's [lo, hi] range."""
    _check_domain_point(point, spec, "clamp_to_range")
    clamped = tuple(
        min(max(c, lo), hi) for c, (lo, hi) in zip(point.coords, spec.ranges)
    )
    return Prototype(domain=point.domain, coords=clamped)


def _check_domain_point(point: Prototype, spec: DomainSpec, op: str) -> None:
    if point.domain != spec.name:
        raise ValidationError(
            f"{op}: prototype belongs to domain {point.domain!r}, not {spec.name!r}"
        )
    if point.k != spec.k:
        raise ValidationError(
            f"{op}: expected {spec.k} coordinates for domain {spec.name!r}, got {point.k}"
        )


def encode(point: Prototype | Sequence[float], spec: DomainSpec) -> UnitaryHypervector:
    """Encode a prototype: bind the fractional powers of the bases.

    Order-independent and deterministic given (spec, point). The phase of
    sample j is the wrapped inner product sum_i p_i * phi_{basis_i, j}.
    """
    if isinstance(point, Prototype):
        _check_domain_point(point, spec, "encode")
        coords = point.coords
    else:
        coords = tuple(float(c) for c in point)
        if len(coords) != spec.k:
            raise ValidationError(
                f"encode: expected {spec.k} coordinates for domain {spec.name!r}, "
                f"got {len(coords)}"
            )
    basis_phases = np.stack([b.phases for b in spec.bases])  # (k, d)
    return UnitaryHypervector(np.asarray(coords) @ basis_phases)


def kernel_similarity(
    p: Prototype | Sequence[float],
    q: Prototype | Sequence[float],
    spec: DomainSpec,
) -> float:
    """Closed-form semantic kernel between two points of one domain.

    prod_i exp(-sigma_i^2 * (p_i - q_i)^2 / 2): the expected hypervector
    similarity of Gaussian-basis encodings at bandwidth kernel_sigmas.
    Deterministic, unlike the sampled similarity of two encodings.
    """
    pc = p.coords if isinstance(p, Prototype) else tuple(float(c) for c in p)
    qc = q.coords if isinstance(q, Prototype) else tuple(float(c) for c in q)
    if len(pc) != spec.k or len(qc) != spec.k:
        raise ValidationError(
            f"kernel_similarity: expected {spec.k}-coordinate points for "
            f"domain {spec.name!r}"
        )
    exponent = sum(
        (sigma * (a - b)) ** 2 for sigma, a, b in zip(spec.kernel_sigmas, pc, qc)
    )
    return math.exp(-0.5 * exponent)
