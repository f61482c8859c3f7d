"""Command-line front end.

Subcommands: ``init`` (create a store with a domain), ``add`` (store a
concept), ``analogy`` (category or property query), ``decode`` (encode a
point and factor it back), ``bench`` (resonator vs. exhaustive decoding),
and ``fixtures`` (materialize the documented demo store).

Output is human text by default; ``--format json`` emits a canonical
structured document (sorted keys, schema_version field) whose bytes are
reproducible given the same seed, store, and command line. Wall-clock
timings appear only in the text rendering of ``bench`` so the structured
output stays deterministic.

Exit codes: 0 ok, 2 validation, 3 not-found or category mismatch,
4 store/file I/O, 5 resonator non-convergence under --strict. Errors are
printed to stderr as ``error[<category>]: <message>``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import analogy as an
from . import hdc, resonator as rn, spaces
from .errors import (
    CategoryMismatchError,
    ConvergenceError,
    HyperspaceError,
    NotFoundError,
    StoreError,
    StoreExistsError,
    ValidationError,
)
from .fixtures import FIXTURE_SEED, build_fixture_store
from .spaces import ColorHSB, Prototype
from .store import ConceptRecord, ConceptStore, load_store, save_store

SCHEMA_VERSION = 1
STORE_ENV_VAR = "HYPERSPACE_STORE"
DEFAULT_STORE_PATH = "hyperspace_store.json"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NOT_FOUND = 3
EXIT_IO = 4
EXIT_NO_CONVERGENCE = 5


# ------------------------------------------------------------------ arg parsing


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not (value > 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from err


def _name_list(text: str) -> list[str]:
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated list of names")
    return names


def _range_list(text: str) -> list[tuple[float, float]]:
    ranges = []
    for part in text.split(","):
        pieces = part.split(":")
        if len(pieces) != 2:
            raise argparse.ArgumentTypeError(f"expected LO:HI, got {part!r}")
        try:
            ranges.append((float(pieces[0]), float(pieces[1])))
        except ValueError as err:
            raise argparse.ArgumentTypeError(f"bad range {part!r}") from err
    return ranges


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperspace",
        description="Concept prototypes in phasor hypervectors: encode, analogize, decode.",
    )
    parser.add_argument(
        "--store",
        default=None,
        help=f"store file (default ${STORE_ENV_VAR} or ./{DEFAULT_STORE_PATH})",
    )
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format (json is canonical and byte-reproducible)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_init = sub.add_parser("init", help="create a store containing one domain")
    p_init.add_argument("name", help="domain name")
    p_init.add_argument("--dims", type=_name_list, required=True, help="comma-separated dimension names")
    p_init.add_argument("--range", dest="ranges", type=_range_list, default=[(-10.0, 10.0)],
                        help="LO:HI, either one for all dimensions or one per dimension")
    p_init.add_argument("--d", type=_positive_int, default=hdc.DEFAULT_DIMENSION,
                        help="hypervector dimension (default 10000)")
    p_init.add_argument("--seed", type=_nonnegative_int, default=0, help="global RNG seed")
    p_init.add_argument("--basis-sigma", type=_positive_float, default=spaces.DEFAULT_BASIS_SIGMA,
                        help="phase std for sampling bases (default 2*pi)")
    p_init.add_argument("--kernel-sigma", type=_float_list, default=[spaces.DEFAULT_KERNEL_SIGMA],
                        help="semantic kernel bandwidth, one value or one per dimension (default pi/7)")
    p_init.add_argument("--append", action="store_true",
                        help="add the domain to an existing store instead of creating one")
    p_init.add_argument("--force", action="store_true", help="overwrite an existing store file")

    p_add = sub.add_parser("add", help="store a labeled concept prototype")
    p_add.add_argument("label")
    p_add.add_argument("--domain", default=None, help="target domain (default: the only one)")
    group = p_add.add_mutually_exclusive_group(required=True)
    group.add_argument("--hsb", type=_float_list, default=None, help="H,S,B color values")
    group.add_argument("--point", type=_float_list, default=None, help="explicit coordinates")
    p_add.add_argument("--beta", type=_positive_float, default=spaces.DEFAULT_BETA,
                       help="HSB scaling constant (default 10)")
    p_add.add_argument("--overwrite", action="store_true", help="replace an existing label")

    p_ana = sub.add_parser("analogy", help="solve A : B :: C : X")
    p_ana.add_argument("kind", choices=("category", "property"))
    p_ana.add_argument("a")
    p_ana.add_argument("b")
    p_ana.add_argument("c")
    p_ana.add_argument("--domain", default=None, help="category domain when operands share several")
    p_ana.add_argument("--method", choices=("resonator", "bruteforce"), default="resonator")
    p_ana.add_argument("--grid-step", type=_positive_float, default=rn.DEFAULT_GRID_STEP)
    p_ana.add_argument("--max-sweeps", type=_positive_int, default=100)
    p_ana.add_argument("--strict", action="store_true",
                       help="treat resonator non-convergence as an error (exit 5)")

    p_dec = sub.add_parser("decode", help="encode a point, then factor it back off the grid")
    p_dec.add_argument("--point", type=_float_list, required=True)
    p_dec.add_argument("--domain", default=None)
    p_dec.add_argument("--method", choices=("resonator", "bruteforce"), default="resonator")
    p_dec.add_argument("--grid-step", type=_positive_float, default=rn.DEFAULT_GRID_STEP)
    p_dec.add_argument("--max-sweeps", type=_positive_int, default=100)
    p_dec.add_argument("--strict", action="store_true")

    p_bench = sub.add_parser("bench", help="decode random grid points; compare decoders")
    p_bench.add_argument("--trials", type=_positive_int, default=100)
    p_bench.add_argument("--d", type=_positive_int, default=hdc.DEFAULT_DIMENSION)
    p_bench.add_argument("--k", type=_positive_int, default=3, help="number of factors (default 3)")
    p_bench.add_argument("--seed", type=_nonnegative_int, default=0)
    p_bench.add_argument("--grid-step", type=_positive_float, default=rn.DEFAULT_GRID_STEP)
    p_bench.add_argument("--range", dest="ranges", type=_range_list, default=[(-10.0, 10.0)])
    p_bench.add_argument("--method", choices=("both", "resonator", "bruteforce"), default="both")
    p_bench.add_argument("--max-sweeps", type=_positive_int, default=100)

    p_fix = sub.add_parser("fixtures", help="write the documented demo store")
    p_fix.add_argument("--d", type=_positive_int, default=hdc.DEFAULT_DIMENSION)
    p_fix.add_argument("--seed", type=_nonnegative_int, default=FIXTURE_SEED)
    p_fix.add_argument("--force", action="store_true")

    return parser


# --------------------------------------------------------------------- helpers


def _store_path(args: argparse.Namespace) -> Path:
    if args.store:
        return Path(args.store)
    return Path(os.environ.get(STORE_ENV_VAR, DEFAULT_STORE_PATH))


def _pick_domain(store: ConceptStore, requested: str | None) -> str:
    if requested is not None:
        return store.domain(requested).name
    if len(store.domains) == 1:
        return store.domains[0].name
    if not store.domains:
        raise NotFoundError("the store has no domains; run init first")
    names = ", ".join(spec.name for spec in store.domains)
    raise ValidationError(f"several domains registered ({names}); pass --domain")


def _store_summary(store: ConceptStore) -> dict:
    return {"seed": store.seed, "dimension": store.d}


def _answer_payload(answer: an.AnalogyAnswer) -> dict:
    return {
        "kind": answer.kind,
        "domain": answer.domain,
        "point": list(answer.point.coords),
        "nearest_label": answer.nearest_label,
        "nearest_similarity": answer.nearest_similarity,
        "decode_sweeps": answer.decode_sweeps,
        "decode_converged": answer.decode_converged,
        "decode_method": answer.decode_method,
        "salient_domain": answer.salient_domain,
    }


def _format_point(coords) -> str:
    return "(" + ", ".join(f"{c:g}" for c in coords) + ")"


# -------------------------------------------------------------------- commands


def _cmd_init(args: argparse.Namespace) -> tuple[dict, list[str]]:
    path = _store_path(args)
    ranges = args.ranges[0] if len(args.ranges) == 1 else args.ranges
    kernel_sigma = args.kernel_sigma[0] if len(args.kernel_sigma) == 1 else args.kernel_sigma
    if args.append:
        store = load_store(path)
    else:
        if path.exists() and not args.force:
            raise StoreExistsError(
                f"store file {path} already exists (pass --force to overwrite, "
                f"or --append to add a domain)"
            )
        store = ConceptStore(seed=args.seed, d=args.d)
    store = store.with_new_domain(
        args.name,
        args.dims,
        ranges=ranges,
        basis_sigma=args.basis_sigma,
        kernel_sigma=kernel_sigma,
    )
    save_store(store, path)
    spec = store.domain(args.name)
    payload = {
        "command": "init",
        "store": _store_summary(store),
        "domain": {
            "name": spec.name,
            "dim_names": list(spec.dim_names),
            "ranges": [list(r) for r in spec.ranges],
            "basis_sigma": spec.basis_sigma,
            "kernel_sigmas": list(spec.kernel_sigmas),
            "stream": spec.stream,
        },
        "path": str(path),
    }
    text = [
        f"initialized domain {spec.name!r} ({spec.k} dimensions: {', '.join(spec.dim_names)})",
        f"store written to {path} (d={store.d}, seed={store.seed})",
    ]
    return payload, text


def _cmd_add(args: argparse.Namespace) -> tuple[dict, list[str]]:
    path = _store_path(args)
    store = load_store(path)
    domain = _pick_domain(store, args.domain)
    if args.hsb is not None:
        if len(args.hsb) != 3:
            raise ValidationError(f"--hsb needs exactly 3 values, got {len(args.hsb)}")
        color = ColorHSB(*args.hsb)
        point = spaces.hsb_to_point(color, beta=args.beta, domain=domain)
        record = ConceptRecord(
            label=args.label,
            domain=domain,
            coords=point.coords,
            source="hsb",
            hsb=tuple(args.hsb),
        )
    else:
        record = ConceptRecord(label=args.label, domain=domain, coords=tuple(args.point))
    store = store.put_concept(record, overwrite=args.overwrite)
    save_store(store, path)
    stored = store.get_concept(domain, args.label)
    payload = {
        "command": "add",
        "store": _store_summary(store),
        "concept": {
            "label": stored.label,
            "domain": stored.domain,
            "coords": list(stored.coords),
            "source": stored.source,
            "hsb": list(stored.hsb) if stored.hsb else None,
        },
        "path": str(path),
    }
    text = [f"added {stored.label!r} to {domain!r} at {_format_point(stored.coords)}"]
    return payload, text


def _cmd_analogy(args: argparse.Namespace) -> tuple[dict, list[str]]:
    store = load_store(_store_path(args))
    config = rn.ResonatorConfig(max_sweeps=args.max_sweeps)
    if args.kind == "category":
        answer = an.solve_category(
            store,
            args.a,
            args.b,
            args.c,
            domain=args.domain,
            grid_step=args.grid_step,
            method=args.method,
            config=config,
        )
    else:
        answer = an.solve_property(store, args.a, args.b, args.c)
    if args.strict and not answer.decode_converged:
        raise ConvergenceError(
            f"resonator did not converge within {args.max_sweeps} sweeps"
        )
    payload = {
        "command": "analogy",
        "store": _store_summary(store),
        "operands": {"a": args.a, "b": args.b, "c": args.c},
        "answer": _answer_payload(answer),
    }
    text = [
        f"{args.a} : {args.b} :: {args.c} : {answer.nearest_label or '?'}",
        f"  domain          {answer.domain}",
        f"  answer point    {_format_point(answer.point.coords)}",
        f"  nearest concept {answer.nearest_label} (kernel similarity {answer.nearest_similarity:.6g})"
        if answer.nearest_label is not None
        else "  nearest concept n/a (domain holds no concepts)",
    ]
    if answer.kind == "category":
        text.append(
            f"  decode          {answer.decode_method}, {answer.decode_sweeps} sweeps, "
            f"converged={answer.decode_converged}"
        )
        if answer.domain == "color" and answer.point.k == 3:
            hsb = spaces.point_to_hsb(answer.point)
            text.append(
                f"  as HSB          ({hsb.hue:.4g}, {hsb.saturation:.4g}, {hsb.brightness:.4g})"
            )
    else:
        text.append(f"  salient domain  {answer.salient_domain}")
    return payload, text


def _cmd_decode(args: argparse.Namespace) -> tuple[dict, list[str]]:
    store = load_store(_store_path(args))
    domain = _pick_domain(store, args.domain)
    spec = store.domain(domain)
    point = Prototype(domain=domain, coords=tuple(args.point))
    if point.k != spec.k:
        raise ValidationError(
            f"--point needs {spec.k} coordinates for domain {domain!r}, got {point.k}"
        )
    books = rn.make_codebooks(spec, step=args.grid_step)
    for value, book, (lo, hi) in zip(point.coords, books, spec.ranges):
        if not (lo <= value <= hi):
            raise ValidationError(
                f"coordinate {value} outside domain range [{lo}, {hi}]"
            )
    encoded = spaces.encode(point, spec)
    if args.method == "bruteforce":
        result = rn.brute_force_decode(encoded, books)
    else:
        result = rn.resonator_decode(
            encoded, books, rn.ResonatorConfig(max_sweeps=args.max_sweeps)
        )
    if args.strict and not result.converged:
        raise ConvergenceError(f"resonator did not converge within {args.max_sweeps} sweeps")
    payload = {
        "command": "decode",
        "store": _store_summary(store),
        "domain": domain,
        "input_point": list(point.coords),
        "decoded": {
            "coords": list(result.coords),
            "indices": list(result.indices),
            "sweeps": result.sweeps_used,
            "converged": result.converged,
            "method": result.method,
            "comparisons": result.comparisons,
        },
    }
    text = [
        f"encoded {_format_point(point.coords)} in {domain!r}, decoded "
        f"{_format_point(result.coords)}",
        f"  method {result.method}, sweeps {result.sweeps_used}, "
        f"converged={result.converged}, comparisons {result.comparisons}",
    ]
    return payload, text


def _cmd_bench(args: argparse.Namespace) -> tuple[dict, list[str]]:
    ranges = args.ranges[0] if len(args.ranges) == 1 else args.ranges
    spec = spaces.make_domain(
        "bench",
        [f"f{i}" for i in range(args.k)],
        args.d,
        ranges=ranges,
        seed=args.seed,
        stream=0,
    )
    books = rn.make_codebooks(spec, step=args.grid_step)
    sizes = [b.size for b in books]
    search_space = math.prod(sizes)
    config = rn.ResonatorConfig(max_sweeps=args.max_sweeps)
    run_resonator = args.method in ("both", "resonator")
    run_bruteforce = args.method in ("both", "bruteforce")
    oracle = rn.BruteForceDecoder(books) if run_bruteforce else None

    rng = hdc.phase_generator(args.seed, substream=(0xBE7C,))
    truth_indices = [tuple(int(rng.integers(0, n)) for n in sizes) for _ in range(args.trials)]

    res_stats = {"matches_truth": 0, "matches_oracle": 0, "sweeps": [], "comparisons": []}
    bf_matches = 0
    res_wall = bf_wall = 0.0
    for truth in truth_indices:
        coords = [float(b.values[i]) for b, i in zip(books, truth)]
        encoded = spaces.encode(coords, spec)
        bf_result = None
        if run_bruteforce:
            start = time.perf_counter()
            bf_result = oracle.decode(encoded)
            bf_wall += time.perf_counter() - start
            bf_matches += bf_result.indices == truth
        if run_resonator:
            start = time.perf_counter()
            result = rn.resonator_decode(encoded, books, config)
            res_wall += time.perf_counter() - start
            res_stats["matches_truth"] += result.indices == truth
            res_stats["sweeps"].append(result.sweeps_used)
            res_stats["comparisons"].append(result.comparisons)
            if bf_result is not None:
                res_stats["matches_oracle"] += result.indices == bf_result.indices

    results: dict = {
        "trials": args.trials,
        "grid_sizes": sizes,
        "search_space": search_space,
    }
    text = [
        f"bench: trials={args.trials} d={args.d} grid={'x'.join(map(str, sizes))} "
        f"({search_space} combinations)"
    ]
    if run_resonator:
        mean_sweeps = sum(res_stats["sweeps"]) / args.trials
        mean_cmp = sum(res_stats["comparisons"]) / args.trials
        results["resonator"] = {
            "matches_truth": res_stats["matches_truth"],
            "matches_oracle": res_stats["matches_oracle"] if run_bruteforce else None,
            "mean_sweeps": mean_sweeps,
            "mean_comparisons": mean_cmp,
        }
        agree = (
            f", {res_stats['matches_oracle']}/{args.trials} match oracle"
            if run_bruteforce
            else ""
        )
        text.append(
            f"resonator:  {res_stats['matches_truth']}/{args.trials} exact{agree}, "
            f"mean sweeps {mean_sweeps:.2f}, mean comparisons {mean_cmp:.0f}, "
            f"wall {res_wall:.2f}s"
        )
    if run_bruteforce:
        results["bruteforce"] = {
            "matches_truth": bf_matches,
            "comparisons_per_decode": search_space,
        }
        text.append(
            f"bruteforce: {bf_matches}/{args.trials} exact, {search_space} comparisons "
            f"per decode, wall {bf_wall:.2f}s"
        )
    payload = {"command": "bench", "config": {
        "d": args.d,
        "k": args.k,
        "seed": args.seed,
        "grid_step": args.grid_step,
        "method": args.method,
        "max_sweeps": args.max_sweeps,
    }, "results": results}
    return payload, text


def _cmd_fixtures(args: argparse.Namespace) -> tuple[dict, list[str]]:
    path = _store_path(args)
    if path.exists() and not args.force:
        raise StoreExistsError(f"store file {path} already exists (pass --force)")
    store = build_fixture_store(d=args.d, seed=args.seed)
    save_store(store, path)
    payload = {
        "command": "fixtures",
        "store": _store_summary(store),
        "path": str(path),
        "domains": [spec.name for spec in store.domains],
        "concepts": sorted({c.label for c in store.concepts}),
    }
    text = [
        f"fixture store written to {path} (d={store.d}, seed={store.seed})",
        f"domains: {', '.join(payload['domains'])}",
        f"concepts: {', '.join(payload['concepts'])}",
    ]
    return payload, text


_HANDLERS = {
    "init": _cmd_init,
    "add": _cmd_add,
    "analogy": _cmd_analogy,
    "decode": _cmd_decode,
    "bench": _cmd_bench,
    "fixtures": _cmd_fixtures,
}


# ------------------------------------------------------------------------ main


def _error_category(err: HyperspaceError) -> tuple[str, int]:
    if isinstance(err, ConvergenceError):
        return "non-convergence", EXIT_NO_CONVERGENCE
    if isinstance(err, CategoryMismatchError):
        return "category-mismatch", EXIT_NOT_FOUND
    if isinstance(err, NotFoundError):
        return "not-found", EXIT_NOT_FOUND
    if isinstance(err, StoreError):
        return "io", EXIT_IO
    if isinstance(err, ValidationError):
        return "validation", EXIT_VALIDATION
    return "error", EXIT_VALIDATION


def render_json(payload: dict) -> str:
    document = dict(payload)
    document["schema_version"] = SCHEMA_VERSION
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, text = _HANDLERS[args.command](args)
    except HyperspaceError as err:
        category, code = _error_category(err)
        print(f"error[{category}]: {err}", file=sys.stderr)
        return code
    except OSError as err:
        print(f"error[io]: {err}", file=sys.stderr)
        return EXIT_IO
    if args.format == "json":
        print(render_json(payload))
    else:
        print("\n".join(text))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
