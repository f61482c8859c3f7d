"""Complex-phasor hypervector algebra.

A unitary hypervector is stored as an array of phases: sample j is
e^{i*phi_j}. In that representation binding is samplewise phase addition,
unbinding is phase subtraction, and fractional power encoding multiplies
every phase by the exponent, so the algebraic identities

    bind(x, identity) == x
    unbind(bind(x, y), y) == x
    fpe(x, a + b) == bind(fpe(x, a), fpe(x, b))
    fpe(fpe(x, a), b) == fpe(x, a * b)

hold exactly up to phase wrapping, with no magnitude drift. Phases are
canonicalized to (-pi, pi] after every operation.

Similarity is the mean cosine of samplewise phase differences, i.e. the
real part of the normalized Hermitian inner product. For a basis whose
phases are drawn from N(0, sigma^2), similarity between fractional powers
p and q concentrates on exp(-sigma^2 (p-q)^2 / 2), which is what turns a
bound product of encoded coordinates into a radial-basis kernel.

Sampling is deterministic and portable: a 64-bit seed plus an integer
sub-stream tuple selects an independent PCG64 stream, so the same
(seed, substream, d, spec) always reproduces the same hypervector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, ValidationError

__all__ = [
    "DEFAULT_DIMENSION",
    "Hypervector",
    "PhaseDistributionSpec",
    "UnitaryHypervector",
    "bind",
    "bind_all",
    "fpe",
    "identity",
    "inverse",
    "normalize_phases",
    "phase_generator",
    "sample_gaussian",
    "similarity",
    "superpose",
    "unbind",
    "wrap_phases",
]

TWO_PI = 2.0 * math.pi

# Hypervector length used throughout unless a caller asks for less.
DEFAULT_DIMENSION = 10_000

# Complex samples below this magnitude get phase 0 during normalization.
ZERO_MAGNITUDE = 1e-12


def wrap_phases(phi: np.ndarray) -> np.ndarray:
    """Wrap phases into the canonical interval (-pi, pi]."""
    wrapped = np.mod(np.asarray(phi, dtype=np.float64) + np.pi, TWO_PI) - np.pi
    # np.mod lands in [0, 2*pi), so the shift gives [-pi, pi); move the
    # closed edge from -pi to +pi.
    wrapped[wrapped == -np.pi] = np.pi
    return wrapped


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PhaseDistributionSpec:
    """Gaussian phase distribution: mean and standard deviation in radians."""

    mean: float = 0.0
    std: float = TWO_PI

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mean) and math.isfinite(self.std)):
            raise ValidationError("phase distribution mean/std must be finite")
        if self.std < 0:
            raise ValidationError(f"phase std must be >= 0, got {self.std}")


@dataclass(frozen=True, eq=False)
class Hypervector:
    """General complex-sampled hypervector (magnitudes unconstrained)."""

    samples: np.ndarray

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1 or samples.size < 1:
            raise ValidationError("hypervector needs a 1-D sample array of length >= 1")
        if not np.all(np.isfinite(samples)):
            raise ValidationError("hypervector samples must be finite")
        object.__setattr__(self, "samples", _readonly(samples))

    @property
    def dimension(self) -> int:
        return self.samples.shape[0]


@dataclass(frozen=True, eq=False)
class UnitaryHypervector:
    """Unit-magnitude hypervector stored as phases in (-pi, pi]."""

    phases: np.ndarray

    def __post_init__(self) -> None:
        phases = np.asarray(self.phases, dtype=np.float64)
        if phases.ndim != 1 or phases.size < 1:
            raise ValidationError("hypervector needs a 1-D phase array of length >= 1")
        if not np.all(np.isfinite(phases)):
            raise ValidationError("hypervector phases must be finite")
        object.__setattr__(self, "phases", _readonly(wrap_phases(phases)))

    @property
    def dimension(self) -> int:
        return self.phases.shape[0]

    @property
    def samples(self) -> np.ndarray:
        """Complex view e^{i*phi}, computed on demand."""
        return np.exp(1j * self.phases)


def identity(d: int) -> UnitaryHypervector:
    """The binding identity: all phases zero."""
    if d < 1:
        raise ValidationError(f"dimension must be >= 1, got {d}")
    return UnitaryHypervector(np.zeros(d))


def phase_generator(seed: int, substream: Sequence[int] = ()) -> np.random.Generator:
    """Deterministic PCG64 generator for (seed, substream).

    Sub-streams are independent: stream (t, i) is used for basis i of the
    domain registered with stream id t, so every basis hypervector can be
    regenerated bit-for-bit from the store's global seed.
    """
    if seed < 0:
        raise ValidationError(f"seed must be a non-negative integer, got {seed}")
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(s) for s in substream))
    return np.random.Generator(np.random.PCG64(seq))


def sample_gaussian(
    d: int,
    spec: PhaseDistributionSpec = PhaseDistributionSpec(),
    seed: int = 0,
    substream: Sequence[int] = (),
) -> UnitaryHypervector:
    """Sample a unitary hypervector with Gaussian-distributed phases.

    Phases are drawn i.i.d. from N(spec.mean, spec.std^2) and wrapped to
    (-pi, pi]. Deterministic given (d, spec, seed, substream).
    """
    if d < 1:
        raise ValidationError(f"dimension must be >= 1, got {d}")
    rng = phase_generator(seed, substream)
    return UnitaryHypervector(rng.normal(spec.mean, spec.std, size=d))


def _check_dims(x: UnitaryHypervector, y: UnitaryHypervector, op: str) -> None:
    if x.dimension != y.dimension:
        raise DimensionMismatchError(
            f"{op}: dimension mismatch ({x.dimension} vs {y.dimension})"
        )


def bind(x: UnitaryHypervector, y: UnitaryHypervector) -> UnitaryHypervector:
    """Samplewise binding: phases add (circular convolution in Fourier view)."""
    _check_dims(x, y, "bind")
    return UnitaryHypervector(x.phases + y.phases)


def bind_all(xs: Iterable[UnitaryHypervector]) -> UnitaryHypervector:
    """Bind a nonempty sequence of hypervectors together."""
    xs = list(xs)
    if not xs:
        raise ValidationError("bind_all needs at least one hypervector")
    total = np.zeros(xs[0].dimension)
    for x in xs:
        if x.dimension != total.shape[0]:
            raise DimensionMismatchError(
                f"bind_all: dimension mismatch ({x.dimension} vs {total.shape[0]})"
            )
        total = total + x.phases
    return UnitaryHypervector(total)


def inverse(x: UnitaryHypervector) -> UnitaryHypervector:
    """Complex conjugate: phases negated. bind(x, inverse(x)) is the identity."""
    return UnitaryHypervector(-x.phases)


def unbind(z: UnitaryHypervector, y: UnitaryHypervector) -> UnitaryHypervector:
    """Inverse of binding: phases subtract (bind with the conjugate)."""
    _check_dims(z, y, "unbind")
    return UnitaryHypervector(z.phases - y.phases)


def fpe(x: UnitaryHypervector, p: float) -> UnitaryHypervector:
    """Fractional power encoding: every phase multiplied by the real scalar p.

    Behaves as p sequential bindings of x with itself, for any real p:
    fpe(x, a + b) == bind(fpe(x, a), fpe(x, b)) exactly in phase arithmetic.
    """
    if not math.isfinite(p):
        raise ValidationError(f"fpe exponent must be finite, got {p}")
    return UnitaryHypervector(x.phases * float(p))


def similarity(x: UnitaryHypervector, y: UnitaryHypervector) -> float:
    """Mean cosine of samplewise phase differences, in [-1, 1].

    Equal to the real part of the normalized Hermitian inner product;
    1.0 iff the phases agree samplewise (mod 2*pi).
    """
    _check_dims(x, y, "similarity")
    return float(np.mean(np.cos(x.phases - y.phases)))


def superpose(xs: Sequence[Hypervector | UnitaryHypervector]) -> Hypervector:
    """Elementwise complex sum. The result is generally non-unitary."""
    if len(xs) == 0:
        raise ValidationError("superpose needs at least one hypervector")
    d = xs[0].dimension
    total = np.zeros(d, dtype=np.complex128)
    for x in xs:
        if x.dimension != d:
            raise DimensionMismatchError(
                f"superpose: dimension mismatch ({x.dimension} vs {d})"
            )
        total += x.samples
    return Hypervector(total)


def normalize_phases(x: Hypervector | UnitaryHypervector) -> UnitaryHypervector:
    """Project onto the unit circle: keep phases, set magnitudes to 1.

    Samples with magnitude below 1e-12 get phase 0. Unitary input is
    returned unchanged.
    """
    if isinstance(x, UnitaryHypervector):
        return x
    phases = np.angle(x.samples)
    phases = np.where(np.abs(x.samples) < ZERO_MAGNITUDE, 0.0, phases)
    return UnitaryHypervector(phases)
