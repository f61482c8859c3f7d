"""Codebook construction and factorization of bound hypervectors.

Decoding recovers the grid coordinates hidden inside a bound product of
fractionally exponentiated bases. Each basis gets a codebook: the basis
raised to every grid value. Two decoders are provided.

``brute_force_decode`` scores the query against the full Cartesian
product of codebook entries (one entry per book) and returns the argmax.
It is exact and serves as the correctness oracle, but costs
prod_i |values_i| similarity evaluations per call, which is exactly the
combinatorial blow-up the resonator exists to avoid.

``resonator_decode`` runs an iterative factorization network. Each factor
keeps a running unitary estimate, initialized to the normalized
superposition of its whole codebook. A sweep visits every factor, unbinds
all other current estimates from the query, scores the residual against
the factor's codebook, and replaces the estimate with the normalized
score-weighted superposition of entries (soft cleanup; hard argmax
substitution is available as a config option). Convergence is declared
when no factor's argmax index changes across a full sweep. Cost per sweep
is O(sum_i |values_i|) entry comparisons.

Both decoders are deterministic and break score ties toward the lowest
lexicographic index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, ValidationError
from .hdc import UnitaryHypervector, wrap_phases
from .spaces import DomainSpec

__all__ = [
    "BruteForceDecoder",
    "Codebook",
    "DecodeResult",
    "ResonatorConfig",
    "brute_force_decode",
    "grid_snap",
    "make_codebooks",
    "resonator_decode",
]

DEFAULT_GRID_STEP = 0.5
BRUTE_FORCE_CAP = 1_000_000

# Relative tolerance when checking that (hi - lo) / step is an integer.
GRID_INTEGRALITY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Codebook:
    """Reference hypervectors for one basis: entry j encodes values[j].

    entry_phases holds the FPE phases row-per-value; ``entries`` exposes
    them as hypervectors. The complex phasor matrix used for batch scoring
    is cached on first use.
    """

    basis_index: int
    values: np.ndarray
    entry_phases: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        phases = np.asarray(self.entry_phases, dtype=np.float64)
        if values.ndim != 1 or values.size < 2:
            raise ValidationError("codebook needs at least two grid values")
        if np.any(np.diff(values) <= 0):
            raise ValidationError("codebook values must be strictly increasing")
        if phases.shape != (values.size, phases.shape[1]) or phases.shape[1] < 1:
            raise ValidationError("codebook entry_phases must be (len(values), d)")
        values.setflags(write=False)
        phases.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "entry_phases", phases)

    @property
    def size(self) -> int:
        return int(self.values.size)

    @property
    def dimension(self) -> int:
        return int(self.entry_phases.shape[1])

    @property
    def entries(self) -> list[UnitaryHypervector]:
        return [UnitaryHypervector(row) for row in self.entry_phases]

    @cached_property
    def phasors(self) -> np.ndarray:
        """exp(i * entry_phases) as complex64, cached for batch scoring."""
        return np.exp(1j * self.entry_phases).astype(np.complex64)


@dataclass(frozen=True)
class ResonatorConfig:
    """Resonator knobs.

    update_order "in_place" lets each factor update see the newest other
    estimates within a sweep; "synchronous" updates all factors from the
    previous sweep's estimates. cleanup "soft" uses score-weighted
    superposition during sweeps (argmax only at read-out); "hard"
    substitutes the argmax entry each update. init_jitter adds Gaussian
    phase noise (radians, from ``seed``) to the initial estimates; the
    default 0.0 keeps initialization fully deterministic.
    """

    max_sweeps: int = 100
    update_order: str = "in_place"
    cleanup: str = "soft"
    seed: int | None = None
    init_jitter: float = 0.0

    def __post_init__(self) -> None:
        if self.max_sweeps < 1:
            raise ValidationError(f"max_sweeps must be >= 1, got {self.max_sweeps}")
        if self.update_order not in ("in_place", "synchronous"):
            raise ValidationError(f"unknown update_order {self.update_order!r}")
        if self.cleanup not in ("soft", "hard"):
            raise ValidationError(f"unknown cleanup {self.cleanup!r}")
        if self.init_jitter < 0:
            raise ValidationError("init_jitter must be >= 0")
        if self.init_jitter > 0 and self.seed is None:
            raise ValidationError("init_jitter requires a seed")


@dataclass(frozen=True)
class DecodeResult:
    """Decoded grid point: one value (and codebook index) per factor."""

    coords: tuple[float, ...]
    indices: tuple[int, ...]
    sweeps_used: int
    converged: bool
    method: str
    comparisons: int = field(default=0, compare=False)


def make_codebooks(
    spec: DomainSpec,
    step: float = DEFAULT_GRID_STEP,
    lo: float | None = None,
    hi: float | None = None,
) -> list[Codebook]:
    """One codebook per basis over a uniform grid.

    lo/hi default to each dimension's own range; passing them overrides
    every dimension. (hi - lo) / step must be integral within tolerance.
    """
    if not (step > 0 and math.isfinite(step)):
        raise ValidationError(f"grid step must be > 0, got {step}")
    books = []
    for i, basis in enumerate(spec.bases):
        dim_lo, dim_hi = spec.ranges[i]
        g_lo = dim_lo if lo is None else float(lo)
        g_hi = dim_hi if hi is None else float(hi)
        if not g_lo < g_hi:
            raise ValidationError(f"grid needs lo < hi, got [{g_lo}, {g_hi}]")
        span = (g_hi - g_lo) / step
        n = round(span)
        if n < 1 or abs(span - n) > GRID_INTEGRALITY_TOL * max(1.0, abs(span)):
            raise ValidationError(
                f"grid [{g_lo}, {g_hi}] is not an integral number of steps of {step} "
                f"(({g_hi} - {g_lo}) / {step} = {span})"
            )
        values = g_lo + step * np.arange(n + 1)
        # Outer product value * basis phase, wrapped: row j is fpe(basis, values[j]).
        phases = wrap_phases(values[:, None] * basis.phases[None, :])
        books.append(Codebook(basis_index=i, values=values, entry_phases=phases))
    return books


def grid_snap(coords: Sequence[float], books: Sequence[Codebook]) -> tuple[float, ...]:
    """Nearest grid value per coordinate (the arithmetic decoding oracle)."""
    if len(coords) != len(books):
        raise ValidationError(
            f"grid_snap: {len(coords)} coordinates vs {len(books)} codebooks"
        )
    snapped = []
    for c, book in zip(coords, books):
        idx = int(np.argmin(np.abs(book.values - float(c))))
        snapped.append(float(book.values[idx]))
    return tuple(snapped)


def _check_decode_args(x: UnitaryHypervector, books: Sequence[Codebook], op: str) -> None:
    if len(books) == 0:
        raise ValidationError(f"{op} needs at least one codebook")
    for book in books:
        if book.dimension != x.dimension:
            raise DimensionMismatchError(
                f"{op}: codebook dimension {book.dimension} vs query {x.dimension}"
            )


# Cap on cached bound-grid memory: rows * d * 8 bytes per block.
_BLOCK_BYTE_BUDGET = 512 * 1024 * 1024


class BruteForceDecoder:
    """Exhaustive decoder with the heavy grid work cached across calls.

    The codebooks are split into a small left group and a large right
    group; the bound-entry phasors of both groups are precomputed once, so
    each decode costs a single complex matmul of shape (n_left, d) @
    (d, n_right) plus an argmax over the full product.
    """

    def __init__(self, books: Sequence[Codebook], cap: int = BRUTE_FORCE_CAP):
        books = list(books)
        if not books:
            raise ValidationError("brute force needs at least one codebook")
        sizes = [b.size for b in books]
        total = math.prod(sizes)
        if total > cap:
            raise ValidationError(
                f"brute-force search space {total} exceeds cap {cap}; "
                f"use the resonator decoder instead"
            )
        self.books = books
        self.sizes = sizes
        self.search_space = total

        d = books[0].dimension
        # Balance the two blocks; prefer the smaller block on the left
        # (it is the one multiplied elementwise by the query per decode).
        split = min(
            range(len(books) + 1),
            key=lambda s: max(math.prod(sizes[:s]), math.prod(sizes[s:])),
        )
        biggest = max(math.prod(sizes[:split]), math.prod(sizes[split:]))
        if biggest * d * 8 > _BLOCK_BYTE_BUDGET:
            raise ValidationError(
                f"brute-force grid of {total} combinations needs more than "
                f"{_BLOCK_BYTE_BUDGET // 2**20} MiB per cached block at d={d}; "
                f"lower the grid resolution or use the resonator decoder"
            )
        self._left_conj = self._combined_conj_phasors(books[:split])
        self._right_conj = self._combined_conj_phasors(books[split:])

    @staticmethod
    def _combined_conj_phasors(books: Sequence[Codebook]) -> np.ndarray | None:
        """Conjugate phasors of all bound entry combinations, lexicographic rows."""
        if not books:
            return None
        combined = books[0].entry_phases
        for book in books[1:]:
            combined = (combined[:, None, :] + book.entry_phases[None, :, :]).reshape(
                -1, book.dimension
            )
        return np.exp(-1j * combined).astype(np.complex64)

    def decode(self, x: UnitaryHypervector) -> DecodeResult:
        _check_decode_args(x, self.books, "brute_force_decode")
        query = np.exp(1j * x.phases).astype(np.complex64)
        if self._left_conj is None:
            scores = (self._right_conj @ query).real
        elif self._right_conj is None:
            scores = (self._left_conj @ query).real
        else:
            # scores[l, r] = d * similarity(x, bind(left_l, right_r))
            scores = ((self._left_conj * query) @ self._right_conj.T).real
        flat = int(np.argmax(scores))  # first occurrence = lexicographic tie-break
        indices = np.unravel_index(flat, self.sizes)
        coords = tuple(float(b.values[i]) for b, i in zip(self.books, indices))
        return DecodeResult(
            coords=coords,
            indices=tuple(int(i) for i in indices),
            sweeps_used=1,
            converged=True,
            method="bruteforce",
            comparisons=self.search_space,
        )


def brute_force_decode(
    x: UnitaryHypervector,
    books: Sequence[Codebook],
    cap: int = BRUTE_FORCE_CAP,
) -> DecodeResult:
    """Exact argmax over the full Cartesian product of codebook entries.

    Errors out when prod_i |values_i| exceeds ``cap``. For repeated decodes
    against the same books, build a BruteForceDecoder once instead.
    """
    return BruteForceDecoder(books, cap=cap).decode(x)


def resonator_decode(
    x: UnitaryHypervector,
    books: Sequence[Codebook],
    config: ResonatorConfig = ResonatorConfig(),
) -> DecodeResult:
    """Iteratively factor x into one codebook entry per book.

    Returns converged=False (with the best-so-far indices) when the argmax
    pattern is still moving after max_sweeps; that is a result, not an
    error. A single codebook reduces to one cleanup pass.
    """
    _check_decode_args(x, books, "resonator_decode")
    k = len(books)
    d = x.dimension
    query = np.exp(1j * x.phases)
    conj_phasors = [np.conj(b.phasors.astype(np.complex128)) for b in books]
    comparisons = 0

    if k == 1:
        # Single factor: the residual is x itself, so one cleanup decides.
        scores = (conj_phasors[0] @ query).real / d
        idx = int(np.argmax(scores))
        return DecodeResult(
            coords=(float(books[0].values[idx]),),
            indices=(idx,),
            sweeps_used=1,
            converged=True,
            method="resonator",
            comparisons=books[0].size,
        )

    # Initial estimate per factor: normalized superposition of its book.
    estimates = []
    jitter_rng = None
    if config.init_jitter > 0:
        jitter_rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(config.seed)))
    for book in books:
        total = book.phasors.astype(np.complex128).sum(axis=0)
        phases = np.where(np.abs(total) < 1e-12, 0.0, np.angle(total))
        if jitter_rng is not None:
            phases = phases + jitter_rng.normal(0.0, config.init_jitter, size=d)
        estimates.append(np.exp(1j * wrap_phases(phases)))

    indices: list[int | None] = [None] * k
    sweeps = 0
    converged = False
    while sweeps < config.max_sweeps:
        sweeps += 1
        previous = list(indices)
        source = [e.copy() for e in estimates] if config.update_order == "synchronous" else estimates
        for i, book in enumerate(books):
            others = np.ones(d, dtype=np.complex128)
            for j in range(k):
                if j != i:
                    others *= source[j]
            residual = query * np.conj(others)  # unbind all other estimates
            scores = (conj_phasors[i] @ residual).real / d
            comparisons += book.size
            idx = int(np.argmax(scores))
            indices[i] = idx
            if config.cleanup == "hard":
                estimates[i] = book.phasors[idx].astype(np.complex128)
            else:
                weighted = scores @ book.phasors.astype(np.complex128)
                phases = np.where(np.abs(weighted) < 1e-12, 0.0, np.angle(weighted))
                estimates[i] = np.exp(1j * phases)
        if indices == previous:
            converged = True
            break

    final = tuple(int(i) for i in indices)
    return DecodeResult(
        coords=tuple(float(b.values[i]) for b, i in zip(books, final)),
        indices=final,
        sweeps_used=sweeps,
        converged=converged,
        method="resonator",
        comparisons=comparisons,
    )
