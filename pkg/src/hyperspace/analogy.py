"""Category- and property-based analogical mapping: A : B :: C : X.

Category analogies run the vector-offset (parallelogram) model entirely
in hyperspace. The three operand prototypes are encoded, the answer
hypervector is

    x = unbind(c, a) (*) b

and, because encoding is a homomorphism from coordinate addition to
binding, x literally equals encode(C - A + B). A resonator (or the
brute-force oracle) then factors x back into grid coordinates, and the
decoded point is matched against the stored concepts of the domain.

Property analogies (APPLE : RED :: BANANA : X) instead search for the
salient domain: the registered domain whose identifier hypervector is
closest to the identifier of B's own encoding domain. C's stored
prototype in that domain is its projection, and the answer is the stored
concept closest to that projection (C itself excluded; its projection is
the query, not an answer).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import hdc, resonator as rn, spaces
from .errors import (
    CategoryMismatchError,
    MissingProjectionError,
    NotFoundError,
    ValidationError,
)
from .hdc import UnitaryHypervector
from .spaces import Prototype
from .store import ConceptStore

__all__ = [
    "AnalogyAnswer",
    "parallelogram_find",
    "salient_domain",
    "solve",
    "solve_category",
    "solve_property",
]


@dataclass(frozen=True)
class AnalogyAnswer:
    """Solved analogy: the answer point plus how it was obtained."""

    kind: str
    domain: str
    point: Prototype
    nearest_label: str | None
    nearest_similarity: float | None
    decode_sweeps: int
    decode_converged: bool
    decode_method: str
    salient_domain: str | None = None


def parallelogram_find(
    a: UnitaryHypervector,
    b: UnitaryHypervector,
    c: UnitaryHypervector,
) -> UnitaryHypervector:
    """Vector-offset answer in hyperspace: bind(unbind(c, a), b).

    For encoded prototypes this equals encode(C - A + B) by the encoding
    homomorphism.
    """
    return hdc.bind(hdc.unbind(c, a), b)


def _resolve_operand(
    store: ConceptStore,
    operand: str | Prototype,
) -> tuple[str | None, list[str], Prototype | None]:
    """Resolve a label or explicit prototype to (label, candidate domains, point)."""
    if isinstance(operand, Prototype):
        if not store.has_domain(operand.domain):
            raise NotFoundError(f"prototype references unknown domain {operand.domain!r}")
        return None, [operand.domain], operand
    domains = store.domains_of(operand)
    if not domains:
        raise NotFoundError(f"concept {operand!r} not found in the store")
    return operand, domains, None


def _common_domain(
    store: ConceptStore,
    operands: list[str | Prototype],
    domain: str | None,
) -> str:
    """The single domain shared by all operands (the category gate)."""
    resolved = [_resolve_operand(store, op) for op in operands]
    shared: list[str] = [
        spec.name
        for spec in store.domains
        if all(spec.name in domains for _, domains, _ in resolved)
    ]
    if domain is not None:
        if not store.has_domain(domain):
            raise NotFoundError(f"domain {domain!r} is not registered")
        if domain not in shared:
            raise CategoryMismatchError(
                f"operands do not all belong to domain {domain!r}"
            )
        return domain
    if not shared:
        described = ", ".join(
            f"{label or 'point'}:{{{', '.join(domains)}}}" for label, domains, _ in resolved
        )
        raise CategoryMismatchError(
            f"operands share no common domain (the category gate): {described}"
        )
    if len(shared) > 1:
        raise ValidationError(
            f"operands share several domains ({', '.join(shared)}); "
            f"pass an explicit domain"
        )
    return shared[0]


def _operand_point(store: ConceptStore, operand: str | Prototype, domain: str) -> Prototype:
    if isinstance(operand, Prototype):
        return operand
    return store.get_concept(domain, operand).prototype


def solve_category(
    store: ConceptStore,
    a: str | Prototype,
    b: str | Prototype,
    c: str | Prototype,
    *,
    domain: str | None = None,
    grid_step: float = rn.DEFAULT_GRID_STEP,
    method: str = "resonator",
    config: rn.ResonatorConfig = rn.ResonatorConfig(),
    books: list[rn.Codebook] | None = None,
) -> AnalogyAnswer:
    """Parallelogram analogy within one shared domain.

    Operands may be concept labels or explicit prototypes; they must all
    resolve into a single common domain or the category gate rejects the
    query. The answer hypervector is decoded on the domain's grid and the
    decoded point is ranked against the stored concepts.
    """
    if method not in ("resonator", "bruteforce"):
        raise ValidationError(f"unknown decode method {method!r}")
    name = _common_domain(store, [a, b, c], domain)
    spec = store.domain(name)
    points = [_operand_point(store, op, name) for op in (a, b, c)]
    encoded = [spaces.encode(p, spec) for p in points]
    answer_hv = parallelogram_find(*encoded)

    if books is None:
        books = rn.make_codebooks(spec, step=grid_step)
    if method == "bruteforce":
        result = rn.brute_force_decode(answer_hv, books)
    else:
        result = rn.resonator_decode(answer_hv, books, config)
    decoded = Prototype(domain=name, coords=result.coords)

    nearest_label = nearest_sim = None
    if store.concepts_in(name):
        nearest_label, nearest_sim = store.nearest_concept(name, decoded)
    return AnalogyAnswer(
        kind="category",
        domain=name,
        point=decoded,
        nearest_label=nearest_label,
        nearest_similarity=nearest_sim,
        decode_sweeps=result.sweeps_used,
        decode_converged=result.converged,
        decode_method=result.method,
    )


def salient_domain(store: ConceptStore, b: str | Prototype) -> str:
    """The registered domain most similar to B's own encoding domain.

    Similarity is measured between domain identifier hypervectors (all of
    a domain's bases bound together). Ties break toward the first
    registered domain.
    """
    if not store.domains:
        raise NotFoundError("no domains registered; cannot search for a salient domain")
    _, domains, _ = _resolve_operand(store, b)
    if len(domains) > 1:
        raise ValidationError(
            f"concept {b!r} has prototypes in several domains "
            f"({', '.join(domains)}); the salient-domain search needs one"
        )
    b_ident = store.domain_identifier(domains[0])
    best_name = None
    best_sim = -2.0
    for spec in store.domains:  # registration order; strict > keeps the first tie
        sim = hdc.similarity(b_ident, store.domain_identifier(spec.name))
        if sim > best_sim:
            best_name, best_sim = spec.name, sim
    return best_name


def solve_property(
    store: ConceptStore,
    a: str | Prototype,
    b: str | Prototype,
    c: str,
) -> AnalogyAnswer:
    """Property analogy: find B's salient domain, then C's neighbor there.

    C's stored prototype in the salient domain (its projection) is matched
    against the other concepts of that domain; the closest one is the
    answer. A missing projection for C (or A) is an error.
    """
    salient = salient_domain(store, b)
    if not isinstance(c, str):
        raise ValidationError("property analogies answer with stored labels; C must be one")
    try:
        projection = store.get_concept(salient, c).prototype
    except NotFoundError as err:
        raise MissingProjectionError(
            f"concept {c!r} has no prototype in salient domain {salient!r}"
        ) from err
    if isinstance(a, str):
        try:
            store.get_concept(salient, a)
        except NotFoundError as err:
            raise MissingProjectionError(
                f"concept {a!r} has no prototype in salient domain {salient!r}"
            ) from err

    label, sim = store.nearest_concept(salient, projection, exclude={c})
    answer_point = store.get_concept(salient, label).prototype
    return AnalogyAnswer(
        kind="property",
        domain=salient,
        point=answer_point,
        nearest_label=label,
        nearest_similarity=sim,
        decode_sweeps=0,
        decode_converged=True,
        decode_method="projection",
        salient_domain=salient,
    )


def solve(
    store: ConceptStore,
    kind: str,
    a: str | Prototype,
    b: str | Prototype,
    c: str | Prototype,
    **kwargs,
) -> AnalogyAnswer:
    """Dispatch on analogy kind ("category" or "property")."""
    if kind == "category":
        return solve_category(store, a, b, c, **kwargs)
    if kind == "property":
        return solve_property(store, a, b, c)
    raise ValidationError(f"unknown analogy kind {kind!r}")
