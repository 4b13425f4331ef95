"""Command-line entry point.

Every computation in the library is reachable through one subcommand with
machine-readable output (JSON by default, ``--format table`` for quick
reading).  Exit codes: 0 on success, 1 on a domain error (with a structured
error report on stdout), 2 on a usage error.

Structure sources are either built-in names (see ``vbraid <cmd> --help``)
or paths to JSON files:

* rack tables       {"size": m, "op": [[..]], "inv": [[..]]?, "f": [..]?}
  with 1-indexed entries;
* structure constants {"dim": d, "mu": [[[..]]], "nu": [..],
  "bracket": [[[..]]]?, "group": [[..]]?} (group tables are 0-indexed);
* generalized SD structures {"backend": "set"|"linear", ...};
* braided objects   {"dim": d, "mode": "sum"|"tensor", "sigma": <matrix>,
  "sigma_inv"?: <matrix>, "c"?: <matrix>, "f"?: <matrix>}

where <matrix> is {"rows": r, "cols": c, "entries": [[i, j, poly], ..]} and
poly is [[coeff, [et, es, eu, ev]], ..].
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys

from . import builtins as reg
from .action import apply_word, collision_scan, recover_invariants, standard_probes
from .braid import enumerate_words, garside_twist, parse_word
from .decision import Tri
from .errors import ParseError, VbraidError
from .gsd import gsd_from_json, validate as gsd_validate_structure
from .homology import (certify_levels, gsd_faces, homology_of,
                       normalized_homology, total_differential)
from .linrep import (StructureConstants, assoc_braiding, group_hopf_braiding,
                     GroupTable, leibniz_braiding, object_from_json,
                     object_to_json, rho_word, twist, validate_object, yb_check)
from .ring import RingMatrix
from .sdstruct import FiniteCarrier, FiniteRackTable, classify, derive_inverse


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _source_table(source: str) -> FiniteRackTable:
    if os.path.exists(source):
        return FiniteRackTable.from_json(_load_json(source))
    table = reg.builtin_table(source)
    if table is None:
        raise ParseError(f"{source!r} is neither a file nor a finite builtin")
    return table


def _source_carrier(source: str, args):
    if os.path.exists(source):
        table = FiniteRackTable.from_json(_load_json(source))
        return FiniteCarrier(table, name=source)
    return reg.builtin_carrier(source, args.depth, args.max_visited)


def _source_pair(source: str, args):
    if os.path.exists(source):
        from .action import rack_pair
        table = FiniteRackTable.from_json(_load_json(source))
        carrier = FiniteCarrier(table, name=source)
        if reg.is_virtual_carrier(carrier):
            from .action import virtual_rack_pair
            return virtual_rack_pair(carrier, seed=args.seed)
        return rack_pair(carrier, seed=args.seed)
    return reg.builtin_pair(source, args.depth, args.max_visited, args.seed)


def _source_object(source: str):
    if os.path.exists(source):
        data = _load_json(source)
        if "sigma" in data:
            return object_from_json(data)
        if "group" in data:
            return group_hopf_braiding(
                GroupTable(tuple(tuple(row) for row in data["group"])))
        sc = StructureConstants.from_json(data)
        if sc.bracket is not None:
            return leibniz_braiding(sc)
        return assoc_braiding(sc)
    return reg.builtin_object(source)


def _source_gsd(source: str):
    if os.path.exists(source):
        data = _load_json(source)
        if "backend" in data:
            return gsd_from_json(data)
        if "op" in data:
            from .gsd import from_finite_shelf
            return from_finite_shelf(FiniteRackTable.from_json(data))
        sc = StructureConstants.from_json(data)
        if sc.bracket is not None:
            from .gsd import from_leibniz
            return from_leibniz(sc)
        from .gsd import from_uaa
        return from_uaa(sc)
    return reg.builtin_gsd(source)


def _parse_tuple(carrier, text: str) -> tuple:
    parts = [p for p in text.split(",") if p.strip()]
    return tuple(carrier.parse_elem(p.strip()) for p in parts)


def _format_tuple(carrier, values) -> list[str]:
    return [carrier.format_elem(v) for v in values]


_DIFF_TERM = re.compile(r"([+-]?)\s*(?:(\d+)\s*\*\s*)?(ed|de)")


def _parse_diff(text: str) -> tuple[int, int]:
    """Combinations like ``ed-de``, ``2*ed+3*de``, ``de``."""
    alpha = beta = 0
    consumed = 0
    for match in _DIFF_TERM.finditer(text.replace(" ", "")):
        sign = -1 if match.group(1) == "-" else 1
        coeff = int(match.group(2)) if match.group(2) else 1
        if match.group(3) == "ed":
            alpha += sign * coeff
        else:
            beta += sign * coeff
        consumed += len(match.group(0))
    if consumed != len(text.replace(" ", "")):
        raise ParseError(f"cannot parse differential spec {text!r}")
    return alpha, beta


def _parse_cut(spec: str, dim: int) -> RingMatrix:
    if spec == "ones":
        return RingMatrix(1, dim, {(0, j): 1 for j in range(dim)})
    values = [int(p) for p in spec.split(",")]
    if len(values) != dim:
        raise ParseError(f"cut needs {dim} entries, got {len(values)}")
    return RingMatrix(1, dim, {(0, j): v for j, v in enumerate(values) if v})


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_validate_rack(args) -> dict:
    table = _source_table(args.source)
    cls = classify(table)
    return {
        "kind": cls.kind,
        "spindle": cls.spindle,
        "size": table.size,
        "inverse_table": derive_inverse(table) is not None,
        "automorphism": table.f is not None,
    }


def _cmd_classify(args) -> dict:
    cls = classify(_source_table(args.source))
    return {"kind": cls.kind, "spindle": cls.spindle}


def _cmd_act(args) -> dict:
    pair = _source_pair(args.structure, args)
    values = _parse_tuple(pair.carrier, args.tuple)
    word = parse_word(args.word, len(values))
    out = apply_word(pair, word, values)
    return {"structure": args.structure, "word": args.word,
            "result": _format_tuple(pair.carrier, out)}


def _cmd_invariants(args) -> dict:
    word = parse_word(args.word, args.strands)
    return recover_invariants(word).to_json()


def _cmd_distinguish(args) -> dict:
    pair = _source_pair(args.structure, args)
    n = args.strands
    w1 = parse_word(args.w1, n)
    w2 = parse_word(args.w2, n)
    if args.probes:
        probes = [_parse_tuple(pair.carrier, p) for p in args.probes.split(";")]
    else:
        probes = _distinguish_probes(pair, n)
    undecided = 0
    for probe in probes:
        out1 = apply_word(pair, w1, probe)
        out2 = apply_word(pair, w2, probe)
        verdicts = [pair.carrier.equal(a, b) for a, b in zip(out1, out2)]
        if any(v is Tri.NOT_EQUAL for v in verdicts):
            return {"distinguished": True,
                    "witness": _format_tuple(pair.carrier, probe),
                    "probes_tried": len(probes), "undecided": undecided}
        if any(v is Tri.UNDECIDED for v in verdicts):
            undecided += 1
    return {"distinguished": False if undecided == 0 else None,
            "witness": None, "probes_tried": len(probes),
            "undecided": undecided}


def _distinguish_probes(pair, n: int) -> list[tuple]:
    carrier = pair.carrier
    all_elements = getattr(carrier, "all_elements", None)
    if all_elements is not None:
        elems = list(all_elements())
        if len(elems) ** n <= 20000:
            import itertools
            return [tuple(t) for t in itertools.product(elems, repeat=n)]
    return standard_probes(pair, n)


def _cmd_scan(args) -> dict:
    pair = _source_pair(args.structure, args)
    probes = None
    if args.probes:
        probes = [_parse_tuple(pair.carrier, p) for p in args.probes.split(";")]
    report = collision_scan(pair, args.strands, args.max_len, probes)
    return report.to_json()


def _cmd_rho(args) -> dict:
    obj = _source_object(args.object)
    word = parse_word(args.word, args.strands)
    return rho_word(obj, word).to_json()


def _cmd_yb_check(args) -> dict:
    obj = _source_object(args.object)
    return validate_object(obj).to_json()


def _cmd_twist(args) -> dict:
    obj = _source_object(args.object)
    twisted = twist(obj)
    report = yb_check(twisted)
    out = object_to_json(twisted)
    out["yb_ok"] = report.ok()
    return out


def _cmd_gsd_validate(args) -> dict:
    g = _source_gsd(args.source)
    return gsd_validate_structure(g).to_json()


def _cmd_homology(args) -> dict:
    g = _source_gsd(args.structure)
    dim = g.size if g.backend == "set" else g.dim
    eps = _parse_cut(args.cut, dim) if args.cut else None
    complex_ = gsd_faces(g, eps, args.max_degree)
    alpha, beta = _parse_diff(args.diff)
    diffs = total_differential(complex_, (alpha, beta))
    result = homology_of(complex_, diffs)
    out = {"max_degree": args.max_degree,
           "differential": {"ed": alpha, "de": beta},
           "homology": result.to_json()}
    if args.normalized:
        from .homology import degeneracies_from_delta
        lin = g if g.backend == "linear" else None
        if lin is None:
            from .gsd import linearize
            lin = linearize(g)
        with_s = degeneracies_from_delta(complex_, lin.delta)
        out["levels"] = certify_levels(with_s).to_json()
        out["normalized_homology"] = normalized_homology(with_s, diffs).to_json()
    return out


def _cmd_enumerate(args) -> dict:
    words = enumerate_words(args.strands, args.max_len,
                            positive=not args.full)
    return {"words": [str(w) for w in words]}


def _cmd_garside_twist(args) -> dict:
    word = parse_word(args.word, args.strands)
    return {"twisted": str(garside_twist(word))}


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------

def _emit(result: dict, fmt: str) -> None:
    if fmt == "table":
        for key, value in result.items():
            print(f"{key}: {json.dumps(value, sort_keys=True)}")
    else:
        print(json.dumps(result, indent=2, sort_keys=True))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vbraid",
        description="exact computations with virtual braid words, "
                    "self-distributive structures, their matrix "
                    "representations, and homology")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"),
                        default=argparse.SUPPRESS,
                        help="output format (default json)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for all sampling (default 0)")
    common.add_argument("--depth", type=int, default=argparse.SUPPRESS,
                        help="rewrite budget for free-shelf equality")
    common.add_argument("--max-visited", type=int, default=argparse.SUPPRESS,
                        help="node budget for free-shelf equality")
    parser.set_defaults(format="json", seed=0, depth=8, max_visited=100_000)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(parents=[common], name="validate-rack", help="full report on an operation table")
    p.add_argument("source")
    p.set_defaults(handler=_cmd_validate_rack)

    p = sub.add_parser(parents=[common], name="classify", help="shelf/rack/quandle classification")
    p.add_argument("source")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser(parents=[common], name="act", help="act by a word on a tuple")
    p.add_argument("--structure", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--tuple", required=True)
    p.set_defaults(handler=_cmd_act)

    p = sub.add_parser(parents=[common], name="invariants",
                       help="permutation, sigma count, under-multisets of a "
                            "positive word")
    p.add_argument("--word", required=True)
    p.add_argument("--strands", type=int, required=True)
    p.set_defaults(handler=_cmd_invariants)

    p = sub.add_parser(parents=[common], name="distinguish", help="try to separate two words by a "
                                           "structure's action")
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", required=True)
    p.add_argument("--structure", required=True)
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--probes", help="semicolon-separated tuples")
    p.set_defaults(handler=_cmd_distinguish)

    p = sub.add_parser(parents=[common], name="scan", help="find all pairs of words acting "
                                    "identically on the probes")
    p.add_argument("--structure", required=True)
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--probes")
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser(parents=[common], name="rho", help="representation matrix of a word")
    p.add_argument("--object", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--strands", type=int, required=True)
    p.set_defaults(handler=_cmd_rho)

    p = sub.add_parser(parents=[common], name="yb-check", help="Yang-Baxter and symmetry checks")
    p.add_argument("--object", required=True)
    p.set_defaults(handler=_cmd_yb_check)

    p = sub.add_parser(parents=[common], name="twist", help="conjugate the braiding by the symmetry")
    p.add_argument("--object", required=True)
    p.set_defaults(handler=_cmd_twist)

    p = sub.add_parser(parents=[common], name="garside-twist", help="conjugate a word by the total twist")
    p.add_argument("--word", required=True)
    p.add_argument("--strands", type=int, required=True)
    p.set_defaults(handler=_cmd_garside_twist)

    p = sub.add_parser(parents=[common], name="gsd-validate", help="per-axiom report on a "
                                            "generalized SD structure")
    p.add_argument("source")
    p.set_defaults(handler=_cmd_gsd_validate)

    p = sub.add_parser(parents=[common], name="homology", help="integral homology of the face "
                                        "complex of a structure")
    p.add_argument("--structure", required=True)
    p.add_argument("--cut", help="'ones' or a comma-separated covector")
    p.add_argument("--diff", default="ed-de",
                   help="combination like 'ed-de' or '2*ed+3*de'")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--normalized", action="store_true",
                   help="also report simplicial levels and the homology of "
                        "the quotient by degeneracies")
    p.set_defaults(handler=_cmd_homology)

    p = sub.add_parser(parents=[common], name="enumerate", help="list words up to a length")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--full", action="store_true",
                   help="include sigma inverses (default: positive words)")
    p.set_defaults(handler=_cmd_enumerate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    random.seed(args.seed)
    try:
        result = args.handler(args)
    except VbraidError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args.format)
        return 1
    _emit(result, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
