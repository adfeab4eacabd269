"""Command-line front end.

One executable with subcommand groups; every input is a JSON file, every
subcommand has a ``--json`` mode emitting a machine-readable run report,
and DOT output goes wherever ``--dot`` points.  Exit codes: 0 all checks
passed, 1 a verification check failed, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import platform
import sys
import time

from . import __version__, acceptance, cantor, order, ortho, partitions, scatter, staralg
from .errors import (
    AssertionFailed,
    BadParameters,
    CheckFailed,
    CstardomError,
    IsoFailure,
    ParseError,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

#: errors that mean a verification check did not pass; every other package
#: error signals unusable input or parameters and exits 2
_CHECK_ERRORS = (AssertionFailed, CheckFailed, IsoFailure)


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    start = time.perf_counter()
    digest = hashlib.sha256()
    try:
        results, failed = args.handler(args, digest)
        code = EXIT_CHECK_FAILED if failed else EXIT_OK
    except _CHECK_ERRORS as exc:
        results = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        code = EXIT_CHECK_FAILED
    except CstardomError as exc:
        # remaining package errors indicate unusable input or parameters
        results = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        code = EXIT_USAGE
    except (OSError, json.JSONDecodeError) as exc:
        results = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        code = EXIT_USAGE
    report = {
        "command": args.command_path,
        "inputs_digest": digest.hexdigest(),
        "results": results,
        "versions": {"cstardom": __version__, "python": platform.python_version()},
        "wall_time_s": round(time.perf_counter() - start, 6),
        "exit_code": code,
    }
    if getattr(args, "json", False):
        print(json.dumps(report, sort_keys=True))
    else:
        _print_human(results, code)
    return code


def _print_human(results, code):
    if "error" in results:
        error = results["error"]
        print(f"error ({error['type']}): {error['message']}", file=sys.stderr)
        return
    for line in results.get("lines", []):
        print(line)


def _read_json(path, digest):
    with open(path, "rb") as handle:
        raw = handle.read()
    digest.update(raw)
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _digest_args(digest, *values):
    for value in values:
        digest.update(repr(value).encode())


def _write_dot(args, dot_text, results):
    if args.dot:
        with open(args.dot, "w") as handle:
            handle.write(dot_text)
        results["dot_file"] = args.dot
    else:
        results["dot"] = dot_text
        results.setdefault("lines", []).append(dot_text.rstrip("\n"))


# ---------------------------------------------------------------------------
# input decoding


def _poset_from_json(data):
    if not isinstance(data, dict) or "elements" not in data or "leq" not in data:
        raise ParseError("poset JSON needs 'elements' and 'leq'")
    return order.validate_poset(
        data["elements"], data["leq"], orientation=data.get("orientation")
    )


def _eqrel_from_json(data):
    if not isinstance(data, dict) or "n" not in data or "classes" not in data:
        raise ParseError("relation JSON needs 'n' and 'classes'")
    return partitions.EqRel(range(1, data["n"] + 1), data["classes"])


def _algebra_from_json(data):
    if not isinstance(data, dict) or "dim" not in data:
        raise ParseError("algebra JSON needs 'dim' plus 'generators' or 'basis'")
    dim = data["dim"]
    generators = [staralg.Matrix.from_json_list(m) for m in data.get("generators", [])]
    if "basis" in data:
        basis = [staralg.Matrix.from_json_list(m) for m in data["basis"]]
        return staralg.StarAlgebra(dim, basis, generators=generators)
    return staralg.generated_algebra(generators, dim=dim)


def _omp_from_json(data):
    for key in ("elements", "leq", "ortho"):
        if key not in data:
            raise ParseError("orthomodular poset JSON needs 'elements', 'leq' and 'ortho'")
    return ortho.validate_omp(data["elements"], data["leq"], data["ortho"])


def _topology_from_json(data):
    if not isinstance(data, dict) or "points" not in data or "opens" not in data:
        raise ParseError("topology JSON needs 'points' and 'opens'")
    return scatter.FinTop(data["points"], [set(o) for o in data["opens"]])


# ---------------------------------------------------------------------------
# poset group


def _cmd_poset_check(args, digest):
    data = _read_json(args.input, digest)
    poset = _poset_from_json(data)
    results = {
        "poset": poset.to_json_dict(),
        "valid": True,
        "lines": [f"valid poset with {poset.n} element(s)"],
    }
    return results, False


def _cmd_poset_report(args, digest):
    data = _read_json(args.input, digest)
    _digest_args(digest, args.fin_bound)
    poset = _poset_from_json(data)
    report = order.domain_report(poset, fin_size_bound=args.fin_bound)
    lines = [f"{key}: {value}" for key, value in report.flags().items()]
    if report.bounded:
        lines.append("note: fin() enumeration was size-bounded")
    results = {"report": report.to_json_dict(), "lines": lines}
    return results, False


def _cmd_poset_hasse(args, digest):
    data = _read_json(args.input, digest)
    poset = _poset_from_json(data)
    results = {"covers": [list(pair) for pair in order.hasse(poset)], "lines": []}
    _write_dot(args, order.hasse_dot(poset), results)
    return results, False


# ---------------------------------------------------------------------------
# eqrel group


def _cmd_eqrel_binop(args, digest):
    a = _eqrel_from_json(_read_json(args.a, digest))
    b = _eqrel_from_json(_read_json(args.b, digest))
    out = partitions.join(a, b) if args.op == "join" else partitions.meet(a, b)
    results = dict(out.to_json_dict())
    results["lines"] = [partitions.label_of(out)]
    return results, False


def _cmd_eqrel_lattice(args, digest):
    _digest_args(digest, args.n, args.orientation)
    poset = partitions.partition_lattice(args.n, args.orientation)
    results = dict(poset.to_json_dict())
    results["lines"] = [
        f"{poset.n} partitions of a {args.n}-set ({args.orientation} order)"
    ]
    if args.dot is not None or args.emit_dot:
        _write_dot(args, order.hasse_dot(poset, name="partitions"), results)
    return results, False


# ---------------------------------------------------------------------------
# cantor group


def _cmd_cantor_verify(args, digest):
    _digest_args(digest, args.depth)
    report = cantor.verify_counterexample(args.depth)
    lines = [
        f"depth {report.depth}: {report.r_blocks} block(s) in the truncated relation"
    ]
    lines.extend(
        f"[{'PASS' if check.passed else 'FAIL'}] {check.name}: {check.witness}"
        for check in report.checks
    )
    results = {"report": report.to_json_dict(), "lines": lines}
    return results, not report.passed


def _cmd_cantor_chain(args, digest):
    _digest_args(digest, args.n)
    chain = cantor.dense_chain_witness(args.n)
    results = {
        "witnesses": [rel.to_json_list() for rel in chain],
        "lines": [f"[{l}, {u}]" for rel in chain for l, u in rel.blocks],
    }
    return results, False


# ---------------------------------------------------------------------------
# calg group


def _cmd_calg_generate(args, digest):
    algebra = _algebra_from_json(_read_json(args.input, digest))
    results = dict(algebra.to_json_dict())
    results["dimension"] = algebra.dimension
    results["commutative"] = staralg.is_commutative(algebra)
    results["lines"] = [
        f"algebra of dimension {algebra.dimension} "
        f"({'commutative' if results['commutative'] else 'noncommutative'})"
    ]
    return results, False


def _cmd_calg_lattice(args, digest):
    algebra = _algebra_from_json(_read_json(args.input, digest))
    poset = staralg.c_lattice(algebra)
    results = dict(poset.to_json_dict())
    results["lines"] = [f"{poset.n} commutative subalgebra(s)"]
    if args.dot is not None or args.emit_dot:
        _write_dot(args, order.hasse_dot(poset, name="subalgebras"), results)
    return results, False


def _cmd_calg_atoms(args, digest):
    algebra = _algebra_from_json(_read_json(args.input, digest))
    atom_list = staralg.atoms(algebra)
    results = {
        "count": len(atom_list),
        "atoms": [a.to_json_dict() for a in atom_list],
        "lines": [f"{len(atom_list)} atom(s)"],
    }
    return results, False


def _cmd_calg_spectrum(args, digest):
    algebra = _algebra_from_json(_read_json(args.input, digest))
    spec = staralg.spectrum(algebra)
    results = {"spectrum": spec.to_json_dict()}
    results["lines"] = [f"{len(spec.points)} spectrum point(s)"]
    return results, False


def _cmd_caf_iso(args, digest):
    algebra = _algebra_from_json(_read_json(args.input, digest))
    report = ortho.verify_caf_iso(algebra)
    results = {
        "iso": report.to_json_dict(),
        "lines": [f"order isomorphism on {report.size} node(s)"],
    }
    return results, False


# ---------------------------------------------------------------------------
# omp group


def _cmd_omp_validate(args, digest):
    omp = _omp_from_json(_read_json(args.input, digest))
    results = {
        "valid": True,
        "elements": list(omp.elements),
        "lines": [f"valid orthomodular poset with {omp.n} element(s)"],
    }
    return results, False


def _cmd_omp_boolsub(args, digest):
    omp = _omp_from_json(_read_json(args.input, digest))
    poset = ortho.boolean_subalgebras(omp)
    results = dict(poset.to_json_dict())
    results["count"] = poset.n
    results["lines"] = [f"{poset.n} Boolean subalgebra(s)"]
    if args.dot is not None or args.emit_dot:
        _write_dot(args, order.hasse_dot(poset, name="boolsub"), results)
    return results, False


# ---------------------------------------------------------------------------
# scatteredness group


def _cmd_cb_rank(args, digest):
    _digest_args(digest, args.ordinal)
    alpha = scatter.OrdinalCNF.parse(args.ordinal)
    rank = scatter.cb_rank_ord(alpha)
    results = {
        "ordinal": str(alpha),
        "rank": rank,
        "lines": [f"rank of [0, {alpha}] is {rank}"],
    }
    return results, False


def _cmd_topo_check(args, digest):
    topology = _topology_from_json(_read_json(args.input, digest))
    rank, residue = scatter.cb_rank_fin(topology)
    stone = scatter.stone_scattered_check(topology)
    results = {
        "valid": True,
        "points": [str(p) for p in topology.points],
        "scattered": scatter.is_scattered_fin(topology),
        "rank": rank,
        "residue": sorted(str(p) for p in residue),
        "hausdorff": scatter.is_hausdorff_fin(topology),
        "stonean": scatter.is_stonean_fin(topology),
        "totally_disconnected": scatter.is_totally_disconnected_fin(topology),
        "stone_scattered": stone.to_json_dict(),
    }
    results["lines"] = [
        f"{key}: {results[key]}"
        for key in ("scattered", "rank", "hausdorff", "stonean", "totally_disconnected")
    ]
    return results, False


# ---------------------------------------------------------------------------
# acceptance


def _cmd_accept(args, digest):
    _digest_args(digest, args.selector)
    try:
        outcomes = acceptance.run_acceptance(args.selector)
    except ValueError as exc:
        raise BadParameters(str(exc)) from exc
    results = {
        "criteria": [r.to_json_dict() for r in outcomes],
        "lines": [r.line() for r in outcomes],
    }
    failed = not all(r.passed for r in outcomes)
    return results, failed


# ---------------------------------------------------------------------------
# parser assembly


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="cstardom",
        description="subalgebra lattices, partitions, and their domain-theoretic checks",
    )
    subparsers = parser.add_subparsers(dest="group", required=True)

    def add(group_parser, name, handler, command_path, **extra):
        sub = group_parser.add_parser(name)
        sub.add_argument("--json", action="store_true", help="emit a JSON run report")
        sub.set_defaults(handler=handler, command_path=command_path, **extra)
        return sub

    poset = subparsers.add_parser("poset").add_subparsers(dest="action", required=True)
    check = add(poset, "check", _cmd_poset_check, "poset check")
    check.add_argument("--input", required=True)
    report = add(poset, "report", _cmd_poset_report, "poset report")
    report.add_argument("--input", required=True)
    report.add_argument("--fin-bound", type=int, default=None, dest="fin_bound")
    hasse = add(poset, "hasse", _cmd_poset_hasse, "poset hasse")
    hasse.add_argument("--input", required=True)
    hasse.add_argument("--dot", default=None)

    eqrel = subparsers.add_parser("eqrel").add_subparsers(dest="action", required=True)
    for op in ("join", "meet"):
        binop = add(eqrel, op, _cmd_eqrel_binop, f"eqrel {op}", op=op)
        binop.add_argument("--a", required=True)
        binop.add_argument("--b", required=True)
    lattice = add(eqrel, "lattice", _cmd_eqrel_lattice, "eqrel lattice")
    lattice.add_argument("--n", type=int, required=True)
    lattice.add_argument(
        "--orientation",
        choices=[partitions.ORIENT_REFINEMENT, partitions.ORIENT_SUBALGEBRA],
        required=True,
    )
    lattice.add_argument("--dot", default=None)
    lattice.add_argument("--emit-dot", action="store_true", dest="emit_dot")

    cantor_group = subparsers.add_parser("cantor").add_subparsers(dest="action", required=True)
    verify = add(cantor_group, "verify", _cmd_cantor_verify, "cantor verify")
    verify.add_argument("--depth", type=int, required=True)
    chain = add(cantor_group, "chain", _cmd_cantor_chain, "cantor chain")
    chain.add_argument("--n", type=int, required=True)

    calg = subparsers.add_parser("calg").add_subparsers(dest="action", required=True)
    for name, handler in (
        ("generate", _cmd_calg_generate),
        ("atoms", _cmd_calg_atoms),
        ("spectrum", _cmd_calg_spectrum),
        ("caf-iso", _cmd_caf_iso),
    ):
        sub = add(calg, name, handler, f"calg {name}")
        sub.add_argument("--input", required=True)
    clattice = add(calg, "lattice", _cmd_calg_lattice, "calg lattice")
    clattice.add_argument("--input", required=True)
    clattice.add_argument("--dot", default=None)
    clattice.add_argument("--emit-dot", action="store_true", dest="emit_dot")

    omp = subparsers.add_parser("omp").add_subparsers(dest="action", required=True)
    validate = add(omp, "validate", _cmd_omp_validate, "omp validate")
    validate.add_argument("--input", required=True)
    boolsub = add(omp, "boolsub", _cmd_omp_boolsub, "omp boolsub")
    boolsub.add_argument("--input", required=True)
    boolsub.add_argument("--dot", default=None)
    boolsub.add_argument("--emit-dot", action="store_true", dest="emit_dot")
    omp_iso = add(omp, "caf-iso", _cmd_caf_iso, "omp caf-iso")
    omp_iso.add_argument("--input", required=True)

    cb = subparsers.add_parser("cb").add_subparsers(dest="action", required=True)
    rank = add(cb, "rank", _cmd_cb_rank, "cb rank")
    rank.add_argument("--ordinal", required=True)

    topo = subparsers.add_parser("topo").add_subparsers(dest="action", required=True)
    topo_check = add(topo, "check", _cmd_topo_check, "topo check")
    topo_check.add_argument("--input", required=True)

    accept = subparsers.add_parser("accept")
    accept.add_argument("selector", nargs="?", default="all")
    accept.add_argument("--json", action="store_true")
    accept.set_defaults(handler=_cmd_accept, command_path="accept")

    return parser


if __name__ == "__main__":
    sys.exit(main())
