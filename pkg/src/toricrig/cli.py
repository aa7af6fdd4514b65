"""Command line interface.

Exit codes: 0 success, 1 semantic failure (invalid fan, not toric, ...),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import cohomology as coh
from .corpus import corpus_fans
from .fan import (
    BottTowerData,
    Fan,
    FanError,
    FanParseError,
    bott_tower,
    example_4_3_stage_one,
    example_4_3_triple,
    hirzebruch,
    product,
    projective_space,
    stellar_subdivide,
    validate_fan,
)
from .isosearch import classify_family
from .quasitoric import CharacteristicFunction, enumerate_characteristic, is_characteristic, is_toric_realizable
from .simplicial import SimplicialComplex

DEFAULT_BOUND = 3


class UsageError(Exception):
    pass


class SemanticError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _read_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None


def load_fan(path: str) -> Fan:
    try:
        return Fan.from_dict(_read_json(path))
    except FanParseError as e:
        raise UsageError(f"{path}: {e}") from None


def _checked_fan(path: str) -> Fan:
    f = load_fan(path)
    rep = validate_fan(f)
    if not rep.ok:
        raise SemanticError(f"{path}: not a complete smooth fan: " + "; ".join(rep.violations))
    return f


def resolve_members(specs: list[str]) -> tuple[list[str], list[Fan]]:
    """Expand file paths and the built-in aliases ``example-4-3`` and ``corpus:ID``."""
    ids, fans = [], []
    for item in specs:
        if item == "example-4-3":
            for k, f in enumerate(example_4_3_triple(), start=1):
                ids.append(f"example43_{k}")
                fans.append(f)
        elif item.startswith("corpus:"):
            key = item.split(":", 1)[1]
            table = corpus_fans()
            if key not in table:
                raise UsageError(f"unknown corpus id {key!r}")
            ids.append(key)
            fans.append(table[key])
        else:
            ids.append(Path(item).stem)
            fans.append(_checked_fan(item))
    return ids, fans


# ---------------------------------------------------------------------------
# commands

def cmd_check(args) -> int:
    f = load_fan(args.path)
    rep = validate_fan(f)
    if args.json:
        print(_dump(rep.to_dict()))
    else:
        print(f"valid: {rep.valid}  complete: {rep.complete}  smooth: {rep.smooth}")
        for v in rep.violations:
            print(f"  - {v}")
    return 0 if rep.ok else 1


def cmd_cohomology(args) -> int:
    f = _checked_fan(args.path)
    summary = coh.cohomology_summary(f)
    if args.json:
        print(_dump(summary))
        return 0
    print(f"presentation: {summary['presentation']}")
    print(f"equivariant:  {summary['equivariant']}")
    print("betti:        " + " ".join(map(str, summary["betti"])))
    print("f-vector:     " + " ".join(map(str, summary["f_vector"])))
    n = f.dim
    print(f"int c_{n}:      {summary['chern_numbers'].get(f'c{n}')}")
    for key, val in summary["pontrjagin_numbers"].items():
        print(f"int {key}:      {val}")
    return 0


def cmd_classify(args) -> int:
    ids, fans = resolve_members(args.paths)
    report = classify_family(fans, args.bound, ids)
    if args.json:
        print(_dump(report.to_dict()))
        return 0
    print(f"members: {', '.join(report.members)}   (ring search bound {report.search_bound})")
    for label, parts in (
        ("fan classes", report.fan_iso_classes),
        ("complex classes", report.complex_iso_classes),
        ("ring classes", report.ring_iso_classes),
    ):
        print(f"{label:16s} " + " ".join("{" + ",".join(p) + "}" for p in parts))
    for pair in report.pairs:
        if pair["ring_isomorphic"]:
            print(
                f"  {pair['a']} ~ {pair['b']}: {pair['ring_isomorphisms_found']} isomorphism(s) up to bound; "
                f"pontrjagin: {pair['pontrjagin']}; chern: {pair['chern']}"
            )
    others = sum(1 for pair in report.pairs if not pair["ring_isomorphic"])
    if others:
        print(f"  {others} other pair(s): no ring isomorphism found up to bound {report.search_bound}")
    for a, b in report.rigidity_witnesses:
        print(f"  rigidity witness: {a}, {b} ring-isomorphic with non-isomorphic complexes")
    print(f"  verdict: {report.rigidity_verdict}")
    return 0


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def cmd_construct(args) -> int:
    kind, params = args.kind, args.params
    try:
        if kind == "cpn":
            _arity(params, 1, kind)
            f = projective_space(_int(params[0], "n"))
        elif kind == "hirzebruch":
            _arity(params, 1, kind)
            f = hirzebruch(_int(params[0], "a"))
        elif kind == "bott":
            _arity(params, 1, kind)
            dims = tuple(_int(x, "stage dimension") for x in params[0].split(","))
            twists = _normalize_twists(json.loads(args.twists)) if args.twists else ()
            f = bott_tower(BottTowerData(dims, twists))
        elif kind == "product":
            _arity(params, 2, kind)
            f = product(load_fan(params[0]), load_fan(params[1]))
        elif kind == "blowup":
            _arity(params, 2, kind)
            base = load_fan(params[0])
            k = _int(params[1], "cone index")
            if not 1 <= k <= len(base.max_cones):
                raise UsageError(f"cone index must be in 1..{len(base.max_cones)}")
            f = stellar_subdivide(base, base.max_cones[k - 1])
        elif kind == "example43":
            if len(params) > 1:
                raise UsageError("example43 takes at most one index (0 = single blow-up, 1..3)")
            k = _int(params[0], "index") if params else 1
            if k == 0:
                f = example_4_3_stage_one()
            elif 1 <= k <= 3:
                f = example_4_3_triple()[k - 1]
            else:
                raise UsageError("example43 index must be 0..3")
        else:
            raise UsageError(f"unknown kind {kind!r}")
    except json.JSONDecodeError as e:
        raise UsageError(f"--twists: {e.msg}") from None
    except FanError as e:
        raise UsageError(str(e)) from None
    print(f.to_json())
    return 0


def _normalize_twists(obj):
    """Accept ``[[[2]]]`` (one vector per fibre coordinate) or the shorthand ``[[2]]``
    (one vector per stage, for stages with one-dimensional fibres)."""
    if not isinstance(obj, list):
        raise UsageError("--twists must be a JSON list")
    if all(isinstance(stage, list) and all(isinstance(x, int) for x in stage) for stage in obj):
        return [[stage] for stage in obj]
    return obj


def _arity(params, k, kind):
    if len(params) != k:
        raise UsageError(f"{kind} takes {k} parameter(s), got {len(params)}")


def _load_charfun(path: str) -> CharacteristicFunction:
    d = _read_json(path)
    try:
        return CharacteristicFunction.from_dict(d)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{path}: malformed characteristic function ({e})") from None


def _load_complex(path: str) -> SimplicialComplex:
    d = _read_json(path)
    try:
        return SimplicialComplex.from_dict(d["complex"] if "complex" in d else d)
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{path}: malformed complex ({e})") from None


def cmd_quasitoric(args) -> int:
    if args.action == "check":
        c = _load_charfun(args.path)
        try:
            ok = is_characteristic(c)
        except ValueError as e:
            raise UsageError(str(e)) from None
        print(_dump({"characteristic": ok}) if args.json else ("valid" if ok else "invalid"))
        return 0 if ok else 1
    if args.action == "realizable":
        c = _load_charfun(args.path)
        try:
            if not is_characteristic(c):
                raise SemanticError("not a characteristic function")
        except ValueError as e:
            raise UsageError(str(e)) from None
        ok = is_toric_realizable(c)
        print(_dump({"toric": ok}) if args.json else ("toric" if ok else "not toric"))
        return 0 if ok else 1
    # enumerate
    if args.qbound is None:
        raise UsageError("enumerate requires --bound")
    s = _load_complex(args.path)
    n = args.n if args.n is not None else s.dimension + 1
    try:
        rep = enumerate_characteristic(s, n, args.qbound)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.json:
        print(_dump(rep.to_dict()))
    else:
        print(f"bound {rep.bound}: {rep.total_valid} characteristic functions in the box")
        print(f"orbits under GL(n,Z): {rep.orbits_under_gl}")
        print(f"orbits under GL(n,Z) x Aut(P): {rep.orbits_under_gl_and_aut}")
        print("(sign changes v -> -v are not identified)")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS, help=f"ring search bound (default {DEFAULT_BOUND})")

    p = argparse.ArgumentParser(prog="toricrig", parents=[common], description="Toric manifolds: fans, cohomology, rigidity experiments")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="validate a fan file")
    s.add_argument("path")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("cohomology", parents=[common], help="cohomology ring and characteristic numbers")
    s.add_argument("path")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("classify", parents=[common], help="classify a family of fans")
    s.add_argument("paths", nargs="+", help="fan files, 'example-4-3' or 'corpus:ID'")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("construct", parents=[common], help="print a fan")
    s.add_argument("kind", choices=["cpn", "hirzebruch", "bott", "product", "blowup", "example43"])
    s.add_argument("params", nargs="*")
    s.add_argument("--twists", help="JSON twist blocks for bott, e.g. '[[[2]]]'")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("quasitoric", parents=[common], help="characteristic functions")
    s.add_argument("action", choices=["check", "enumerate", "realizable"])
    s.add_argument("path")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_quasitoric)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    bound = getattr(args, "bound", None)
    args.qbound = bound
    args.bound = DEFAULT_BOUND if bound is None else bound
    if args.bound < 0:
        print("toricrig: --bound must be nonnegative", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except UsageError as e:
        print(f"toricrig: {e}", file=sys.stderr)
        return 2
    except SemanticError as e:
        print(f"toricrig: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
