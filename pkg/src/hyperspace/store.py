"""Persistent registry of domains and labeled concept prototypes.

This is the minimal long-term-memory stand-in: it keeps prototype
coordinates (plus the original HSB values when a concept came from color
preprocessing), not hypervectors. Encodings are recomputed on demand,
which keeps files small; because every basis is regenerated from
(global seed, domain stream, basis index), a reloaded store produces
bit-identical hypervectors. A flag can embed the raw basis phase arrays
for interop with other tools.

The store is a copy-on-write value: mutating operations return a new
snapshot, so readers can keep using the old one concurrently. Files are
JSON with a fixed field order and a format version; save -> load -> save
is byte-identical. Writes go to a temp file in the same directory and are
renamed into place.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import hdc, spaces
from .errors import (
    DuplicateLabelError,
    NotFoundError,
    StoreExistsError,
    StoreFormatError,
    StoreVersionError,
    ValidationError,
)
from .hdc import UnitaryHypervector
from .spaces import DomainSpec, Prototype

__all__ = [
    "STORE_FORMAT",
    "STORE_VERSION",
    "ConceptRecord",
    "ConceptStore",
    "load_store",
    "save_store",
]

STORE_FORMAT = "hyperspace-store"
STORE_VERSION = 1


@dataclass(frozen=True)
class ConceptRecord:
    """A labeled prototype: where one concept sits in one domain."""

    label: str
    domain: str
    coords: tuple[float, ...]
    source: str = "explicit"
    hsb: tuple[float, float, float] | None = None

    def __post_init__(self) -> None:
        if not self.label:
            raise ValidationError("concept label must be nonempty")
        if self.source not in ("explicit", "hsb"):
            raise ValidationError(f"unknown concept source {self.source!r}")
        if self.source == "hsb" and self.hsb is None:
            raise ValidationError("source 'hsb' requires the original hsb values")
        coords = tuple(float(c) for c in self.coords)
        if not coords or not all(math.isfinite(c) for c in coords):
            raise ValidationError(f"concept {self.label!r}: bad coordinates {coords}")
        object.__setattr__(self, "coords", coords)
        if self.hsb is not None:
            object.__setattr__(self, "hsb", tuple(float(v) for v in self.hsb))

    @property
    def prototype(self) -> Prototype:
        return Prototype(domain=self.domain, coords=self.coords)


@dataclass(frozen=True)
class ConceptStore:
    """Immutable snapshot of domains and concepts; writes return new snapshots."""

    seed: int
    d: int = hdc.DEFAULT_DIMENSION
    domains: tuple[DomainSpec, ...] = ()
    concepts: tuple[ConceptRecord, ...] = ()

    # ------------------------------------------------------------------ domains

    def domain(self, name: str) -> DomainSpec:
        for spec in self.domains:
            if spec.name == name:
                return spec
        raise NotFoundError(f"domain {name!r} is not registered")

    def has_domain(self, name: str) -> bool:
        return any(spec.name == name for spec in self.domains)

    def with_new_domain(
        self,
        name: str,
        dim_names,
        *,
        ranges=spaces.DEFAULT_RANGE,
        basis_sigma: float = spaces.DEFAULT_BASIS_SIGMA,
        kernel_sigma=spaces.DEFAULT_KERNEL_SIGMA,
    ) -> "ConceptStore":
        """Register a freshly sampled domain on the next free RNG sub-stream."""
        if self.has_domain(name):
            raise DuplicateLabelError(f"domain {name!r} already registered")
        spec = spaces.make_domain(
            name,
            dim_names,
            self.d,
            ranges=ranges,
            basis_sigma=basis_sigma,
            kernel_sigma=kernel_sigma,
            seed=self.seed,
            stream=len(self.domains),
        )
        return replace(self, domains=self.domains + (spec,))

    def domain_identifier(self, name: str) -> UnitaryHypervector:
        """Hypervector standing for a whole domain: all k bases bound together.

        The origin encoding would be the identity for every domain, which
        is useless as an identifier, so the unencoded bases are bound
        instead.
        """
        return hdc.bind_all(self.domain(name).bases)

    # ----------------------------------------------------------------- concepts

    def put_concept(self, record: ConceptRecord, overwrite: bool = False) -> "ConceptStore":
        spec = self.domain(record.domain)  # raises NotFoundError for unknown domain
        if len(record.coords) != spec.k:
            raise ValidationError(
                f"concept {record.label!r}: {len(record.coords)} coordinates for "
                f"{spec.k}-dimensional domain {record.domain!r}"
            )
        clamped = spaces.clamp_to_range(record.prototype, spec)
        record = replace(record, coords=clamped.coords)
        existing = [
            c for c in self.concepts
            if c.label == record.label and c.domain == record.domain
        ]
        if existing and not overwrite:
            raise DuplicateLabelError(
                f"concept {record.label!r} already exists in domain {record.domain!r} "
                f"(pass overwrite to replace it)"
            )
        kept = tuple(
            c for c in self.concepts
            if not (c.label == record.label and c.domain == record.domain)
        )
        return replace(self, concepts=kept + (record,))

    def get_concept(self, domain: str, label: str) -> ConceptRecord:
        for c in self.concepts:
            if c.domain == domain and c.label == label:
                return c
        raise NotFoundError(f"concept {label!r} not found in domain {domain!r}")

    def concepts_in(self, domain: str) -> list[ConceptRecord]:
        return [c for c in self.concepts if c.domain == domain]

    def domains_of(self, label: str) -> list[str]:
        """Domains holding a record for this label, in registration order."""
        held = {c.domain for c in self.concepts if c.label == label}
        return [spec.name for spec in self.domains if spec.name in held]

    def encode_concept(self, domain: str, label: str) -> UnitaryHypervector:
        record = self.get_concept(domain, label)
        return spaces.encode(record.prototype, self.domain(domain))

    def nearest_concept(
        self,
        domain: str,
        query: Prototype | UnitaryHypervector,
        exclude: frozenset[str] | set[str] = frozenset(),
    ) -> tuple[str, float]:
        """Best-matching stored concept by kernel similarity.

        Point queries use the closed-form kernel (deterministic); raw
        hypervector queries fall back to sampled similarity against each
        concept's encoding. Ties break toward the lexicographically first
        label.
        """
        spec = self.domain(domain)
        candidates = [c for c in self.concepts_in(domain) if c.label not in exclude]
        if not candidates:
            raise NotFoundError(f"domain {domain!r} holds no concepts to match against")
        candidates.sort(key=lambda c: c.label)
        if isinstance(query, UnitaryHypervector):
            scored = [
                (hdc.similarity(query, spaces.encode(c.prototype, spec)), c.label)
                for c in candidates
            ]
        else:
            scored = [
                (spaces.kernel_similarity(query, c.prototype, spec), c.label)
                for c in candidates
            ]
        best_sim, best_label = max(scored, key=lambda pair: pair[0])
        return best_label, float(best_sim)


# --------------------------------------------------------------------- file I/O


def _domain_payload(spec: DomainSpec, embed_bases: bool) -> dict:
    payload = {
        "name": spec.name,
        "dim_names": list(spec.dim_names),
        "ranges": [[lo, hi] for lo, hi in spec.ranges],
        "basis_sigma": spec.basis_sigma,
        "kernel_sigmas": list(spec.kernel_sigmas),
        "stream": spec.stream,
    }
    if embed_bases:
        payload["bases"] = [list(map(float, b.phases)) for b in spec.bases]
    return payload


def _concept_payload(record: ConceptRecord) -> dict:
    payload = {
        "label": record.label,
        "domain": record.domain,
        "coords": list(record.coords),
        "source": record.source,
    }
    if record.hsb is not None:
        payload["hsb"] = list(record.hsb)
    return payload


def save_store(
    store: ConceptStore,
    path: str | Path,
    *,
    embed_bases: bool = False,
    force: bool = True,
) -> None:
    """Write the store as canonical JSON (atomic: temp file then rename)."""
    path = Path(path)
    if path.exists() and not force:
        raise StoreExistsError(f"store file {path} already exists (use force)")
    document = {
        "format": STORE_FORMAT,
        "version": STORE_VERSION,
        "seed": store.seed,
        "dimension": store.d,
        "domains": [_domain_payload(s, embed_bases) for s in store.domains],
        "concepts": [_concept_payload(c) for c in store.concepts],
    }
    text = json.dumps(document, indent=2, ensure_ascii=False) + "\n"
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _require(mapping: dict, key: str, kind, where: str):
    if key not in mapping:
        raise StoreFormatError(f"store file: missing field {key!r} in {where}")
    value = mapping[key]
    if kind is float and isinstance(value, int):
        value = float(value)
    if not isinstance(value, kind):
        raise StoreFormatError(
            f"store file: field {key!r} in {where} should be {getattr(kind, '__name__', kind)}, "
            f"got {type(value).__name__}"
        )
    return value


def load_store(path: str | Path) -> ConceptStore:
    """Load and validate a store file; bases are regenerated or read back."""
    path = Path(path)
    if not path.exists():
        raise NotFoundError(f"store file {path} does not exist")
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise StoreFormatError(
            f"store file {path}: invalid JSON at line {err.lineno}, column {err.colno}: "
            f"{err.msg}"
        ) from err
    if not isinstance(document, dict):
        raise StoreFormatError(f"store file {path}: top level must be an object")
    if document.get("format") != STORE_FORMAT:
        raise StoreFormatError(
            f"store file {path}: field 'format' should be {STORE_FORMAT!r}, "
            f"got {document.get('format')!r}"
        )
    version = _require(document, "version", int, "top level")
    if version != STORE_VERSION:
        raise StoreVersionError(
            f"store file {path} has version {version}, expected {STORE_VERSION}"
        )
    seed = _require(document, "seed", int, "top level")
    d = _require(document, "dimension", int, "top level")

    domains: list[DomainSpec] = []
    for entry in _require(document, "domains", list, "top level"):
        if not isinstance(entry, dict):
            raise StoreFormatError("store file: each domain must be an object")
        name = _require(entry, "name", str, "domain")
        where = f"domain {name!r}"
        dim_names = _require(entry, "dim_names", list, where)
        ranges = [tuple(r) for r in _require(entry, "ranges", list, where)]
        basis_sigma = _require(entry, "basis_sigma", float, where)
        kernel_sigmas = _require(entry, "kernel_sigmas", list, where)
        stream = _require(entry, "stream", int, where)
        if "bases" in entry:
            bases = tuple(UnitaryHypervector(p) for p in entry["bases"])
            spec = DomainSpec(
                name=name,
                dim_names=tuple(dim_names),
                ranges=tuple(ranges),
                bases=bases,
                basis_sigma=basis_sigma,
                kernel_sigmas=tuple(kernel_sigmas),
                stream=stream,
            )
        else:
            spec = spaces.make_domain(
                name,
                dim_names,
                d,
                ranges=ranges,
                basis_sigma=basis_sigma,
                kernel_sigma=kernel_sigmas,
                seed=seed,
                stream=stream,
            )
        domains.append(spec)

    store = ConceptStore(seed=seed, d=d, domains=tuple(domains))
    for entry in _require(document, "concepts", list, "top level"):
        if not isinstance(entry, dict):
            raise StoreFormatError("store file: each concept must be an object")
        label = _require(entry, "label", str, "concept")
        where = f"concept {label!r}"
        record = ConceptRecord(
            label=label,
            domain=_require(entry, "domain", str, where),
            coords=tuple(_require(entry, "coords", list, where)),
            source=_require(entry, "source", str, where),
            hsb=tuple(entry["hsb"]) if "hsb" in entry else None,
        )
        store = store.put_concept(record, overwrite=True)
    return store
