"""``multichess`` command line.

Exit codes: 0 success, 1 a verification or fixture failed, 2 usage error.
Every ``--json`` document carries ``schema`` and a ``manifest`` with the
command, the parameter echo, the seed, the tool version and digests of the
input files. Wall time goes to the log on stderr, not into the document, so
equal manifests give equal bytes.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .boards import (
    BoardSpec,
    GeneralBoardSpec,
    TwoOneJSpec,
    bier_sphere,
    general_chessboard,
    multi_chessboard,
    multipartite,
    two_one_j,
    uniform_chessboard,
)
from .bounds import bound_scan, parse_grid, render_tsv, scan_grid
from .complex import SimplicialComplex, from_facets, full_skeleton
from .fixtures import render_table, report_paper_fixtures
from .homology import ChainData, homological_connectivity, homology
from .jsonio import (
    SCHEMA_VERSION,
    complex_from_obj,
    complex_to_obj,
    digest,
    dumps,
    read_colors,
    read_complex,
)
from .shelling import (
    ShellingCertificate,
    ShellingError,
    lex_order,
    shelling_order,
    tuple_to_face,
    verify_shelling,
    wedge_summary,
)
from .tverberg import TverbergInstance, search_partition, verify_certificate, verify_theorem

log = logging.getLogger("multichess")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _manifest(command: str, args: argparse.Namespace, inputs: Sequence[str] = ()) -> dict:
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "command", "json", "out", "verbose") and v is not None}
    params = json.loads(json.dumps(params, default=str))
    return {
        "command": command,
        "params": params,
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "inputs": {p: digest(Path(p).read_bytes()) for p in inputs},
    }


def _emit(args, text: str):
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _document(command: str, args, body: dict, inputs: Sequence[str] = ()) -> str:
    doc = {"schema": SCHEMA_VERSION, "manifest": _manifest(command, args, inputs)}
    doc.update(body)
    return dumps(doc)


# -- gen ----------------------------------------------------------------


def _load_facets(path: str) -> SimplicialComplex:
    obj = json.loads(Path(path).read_text())
    if isinstance(obj, list):
        obj = {"facets": obj}
    return complex_from_obj(obj)


def _generate(args) -> SimplicialComplex:
    fam = args.family
    if fam == "multipartite":
        if not args.parts:
            raise UsageError("multipartite needs --parts")
        return multipartite(args.parts)
    if args.m is None:
        raise UsageError(f"{fam} needs --m")
    m = args.m
    if fam == "bier":
        if args.k_file:
            K = _load_facets(args.k_file)
        elif args.p is not None:
            K = full_skeleton(m, args.p)
        else:
            raise UsageError("bier needs --p or --k-file")
        return bier_sphere(K, m)
    if args.n is None:
        raise UsageError(f"{fam} needs --n")
    n = args.n
    if fam == "multi":
        rows = args.row_caps or (1,) * n
        cols = args.col_caps or (1,) * m
        return multi_chessboard(BoardSpec(m, n, rows, cols))
    if fam == "uniform":
        return uniform_chessboard(m, n, args.p or 1, args.q or 1)
    if fam == "two-one-j":
        if args.rows:
            return two_one_j(TwoOneJSpec(m, n, frozenset(args.rows)))
        return two_one_j(TwoOneJSpec.first_rows(m, n, args.j or 0))
    if fam == "general":
        if not args.spec_file:
            raise UsageError("general needs --spec-file")
        obj = json.loads(Path(args.spec_file).read_text())
        rows = tuple(from_facets(f) if f else SimplicialComplex((), ()) for f in obj["rows"])
        cols = tuple(from_facets(f) if f else SimplicialComplex((), ()) for f in obj["cols"])
        return general_chessboard(GeneralBoardSpec(m, n, rows, cols))
    raise UsageError(f"unknown family {fam}")


def cmd_gen(args) -> int:
    try:
        K = _generate(args)
    except ValueError as e:
        raise UsageError(str(e))
    inputs = [p for p in (args.k_file, args.spec_file) if p]
    if args.json:
        text = _document("gen", args, {"complex": complex_to_obj(K)}, inputs)
    else:
        text = dumps(complex_to_obj(K))
    _emit(args, text)
    return 0


# -- homology / connectivity ----------------------------------------------


def cmd_homology(args) -> int:
    K = read_complex(args.file)
    H = homology(K, reduced=not args.non_reduced, max_dim=args.dim)
    if args.json:
        _emit(args, _document("homology", args, {"homology": H.as_dict()}, [args.file]))
        return 0
    lines = [f"{'dim':>4}  {'betti':>6}  torsion"]
    for i, b in sorted(H.betti.items()):
        tors = " ".join(f"Z/{t}" for t in H.torsion.get(i, [])) or "-"
        lines.append(f"{i:>4}  {b:>6}  {tors}")
    if H.void:
        lines.append("void complex: every group is zero")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_connectivity(args) -> int:
    K = read_complex(args.file)
    rep = homological_connectivity(K, ChainData(K) if not K.is_void else None)
    if args.json:
        _emit(args, _document("connectivity", args, {"connectivity": rep.as_dict()}, [args.file]))
        return 0
    text = f"hconn {rep.hconn}\n"
    if rep.witness_dim is not None:
        tors = " ".join(f"Z/{t}" for t in rep.witness_torsion)
        text += f"first nonzero reduced group: dim {rep.witness_dim}, rank {rep.witness_betti} {tors}".rstrip() + "\n"
    text += f"note: {rep.note}\n"
    _emit(args, text)
    return 0


# -- shelling -------------------------------------------------------------


def _parse_board(text: str) -> tuple[int, tuple[int, ...]]:
    """``"M:K1,K2,..."``, e.g. ``"5:2,2"``."""
    try:
        m, _, caps = text.partition(":")
        return int(m), _ints(caps)
    except (ValueError, argparse.ArgumentTypeError):
        raise UsageError(f"board spec must look like 5:2,2, got {text!r}")


def cmd_shell(args) -> int:
    m, caps = _parse_board(args.spec)
    try:
        if args.order == "lex":
            order = lex_order(m, caps)
        else:
            order = shelling_order((m, caps), relabel=args.relabel, exploratory=args.exploratory)
    except ShellingError as e:
        raise UsageError(str(e))
    faces = [list(tuple_to_face(A, m)) for A in order]
    body = {"m": m, "row_caps": list(caps), "kind": args.order, "order": faces}
    if args.json:
        _emit(args, _document("shell", args, body))
    else:
        _emit(args, dumps(body))
    return 0


def _read_order(path: str) -> list[list[int]]:
    obj = json.loads(Path(path).read_text())
    if isinstance(obj, dict):
        obj = obj["order"]
    return obj


def cmd_verify_shelling(args) -> int:
    K = read_complex(args.complex)
    order = _read_order(args.order)
    try:
        res = verify_shelling(K, order)
    except ShellingError as e:
        body = {"verified": False, "error": str(e)}
        text = _document("verify-shelling", args, body, [args.complex, args.order]) if args.json \
            else f"invalid input: {e}\n"
        _emit(args, text)
        return 1

    def squares(face):
        return K.describe_face(face)

    if isinstance(res, ShellingCertificate):
        body = {"verified": True, "facets": len(res.order), "spanning": wedge_summary(res),
                "restriction": [list(r) for r in res.restriction]}
        text = f"shelling verified: {len(res.order)} facets, {wedge_summary(res)} spanning\n"
        code = 0
    else:
        body = {"verified": False, "violation": {
            "i": res.i, "j": res.j, "earlier": squares(res.earlier), "B": squares(res.facet),
            "intersection": squares(res.intersection), "restriction": squares(res.restriction)}}
        text = (f"not a shelling: facet j={res.j} B={squares(res.facet)} against earlier i={res.i} "
                f"{squares(res.earlier)}, intersection {squares(res.intersection)}\n")
        code = 1
    if args.json:
        text = _document("verify-shelling", args, body, [args.complex, args.order])
    _emit(args, text)
    return code


# -- bounds -------------------------------------------------------------


def cmd_bounds(args) -> int:
    try:
        grid = parse_grid(args.grid)
    except ValueError as e:
        raise UsageError(str(e))
    specs = list(scan_grid(grid["m"], grid["n"], grid["caps"], canonical=not args.all_orders))
    reports = bound_scan(specs, budget=args.budget, workers=args.threads)
    bad = [r for r in reports if r.violation]
    if args.json:
        body = {"header": ["spec", "mu_3.2", "mu_3.6", "mu_KRW", "hconn", "sharp", "violation"],
                "rows": [r.row() for r in reports], "violations": len(bad)}
        _emit(args, _document("bounds scan", args, body))
    else:
        _emit(args, render_tsv(reports))
    for r in bad:
        log.error("bound violated: %s hconn=%s < %s", r.spec.label(), r.hconn, r.predicted)
    return 1 if bad else 0


# -- tverberg -----------------------------------------------------------


def cmd_tverberg(args) -> int:
    if args.points:
        colors = read_colors(args.points)
        if len(colors) != args.k:
            raise UsageError(f"--k {args.k} but the file has {len(colors)} colors")
        inst = TverbergInstance(args.d, args.k, args.r, args.p, colors)
        if not inst.standard_sizes:
            log.warning("color classes differ from (p+1)r-1 = %d points", inst.class_size)
        res = search_partition(inst, budget=args.budget)
        body: dict[str, Any] = {"status": res.status, "tested": res.tested,
                                "hypothesis": inst.hypothesis, "prime_power": inst.prime_power}
        code = 0
        if res.certificate is not None:
            if not verify_certificate(inst, res.certificate):
                body["status"] = "certificate-rejected"
                code = 1
            body["certificate"] = res.certificate.as_dict()
        elif res.status == "exhausted":
            code = 1
        if args.json:
            _emit(args, _document("tverberg", args, body, [args.points]))
        else:
            _emit(args, dumps(body))
        return code
    stats = verify_theorem(args.d, args.k, args.r, args.p, args.trials, args.seed,
                           budget=args.budget, workers=args.threads)
    body = {"stats": stats.as_dict()}
    if args.json:
        _emit(args, _document("tverberg", args, body))
    else:
        _emit(args, f"{stats.successes}/{stats.trials} certificates, {stats.truncated} truncated, "
                    f"{len(stats.exhausted)} exhausted, mean tests {stats.mean_tested:.2f}\n")
    return 1 if stats.exhausted else 0


# -- report ---------------------------------------------------------------


def cmd_report(args) -> int:
    results = report_paper_fixtures(args.only)
    failed = [r for r in results if not r.passed]
    if args.json:
        _emit(args, _document("report", args, {"fixtures": [r.as_dict() for r in results],
                                               "failed": [r.name for r in failed]}))
    else:
        _emit(args, render_table(results) + "note: connectivity is checked homologically; "
                                            "the fundamental group is not computed\n")
    for r in failed:
        log.error("fixture failed: %s (%s)", r.name, r.claim)
    return 1 if failed else 0


# -- parser -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="schema-versioned machine output")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--verbose", "-v", action="store_true")

    p = _Parser(prog="multichess", description="Multiple chessboard complexes: generators, "
                "homology, shellings, bounds and colored Tverberg partitions.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate a complex as JSON")
    g.add_argument("--family", required=True,
                   choices=["multi", "uniform", "general", "two-one-j", "bier", "multipartite"])
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--row-caps", type=_ints)
    g.add_argument("--col-caps", type=_ints)
    g.add_argument("--p", type=int, help="row cap (uniform) or skeleton size (bier)")
    g.add_argument("--q", type=int, help="column cap (uniform)")
    g.add_argument("--j", type=int, help="number of 2-rook rows (two-one-j)")
    g.add_argument("--rows", type=_ints, help="explicit 2-rook rows (two-one-j)")
    g.add_argument("--parts", type=_ints, help="part sizes (multipartite)")
    g.add_argument("--k-file", help="facets of K for bier")
    g.add_argument("--spec-file", help='{"rows": [facets...], "cols": [facets...]} for general')
    g.set_defaults(func=cmd_gen)

    h = sub.add_parser("homology", parents=[common], help="reduced integral homology")
    h.add_argument("file")
    h.add_argument("--dim", type=int)
    h.add_argument("--non-reduced", action="store_true")
    h.set_defaults(func=cmd_homology)

    c = sub.add_parser("connectivity", parents=[common], help="homological connectivity")
    c.add_argument("file")
    c.set_defaults(func=cmd_connectivity)

    s = sub.add_parser("shell", parents=[common], help="facet order of a board complex")
    s.add_argument("--spec", required=True, help="M:K1,...,Kn (column caps 1)")
    s.add_argument("--order", choices=["shelling", "lex"], default="shelling")
    s.add_argument("--relabel", choices=["order", "reverse"], default="order")
    s.add_argument("--exploratory", action="store_true")
    s.set_defaults(func=cmd_shell)

    v = sub.add_parser("verify-shelling", parents=[common], help="check a facet order")
    v.add_argument("complex")
    v.add_argument("order")
    v.set_defaults(func=cmd_verify_shelling)

    b = sub.add_parser("bounds", help="connectivity bound scan")
    bsub = b.add_subparsers(dest="action", parser_class=_Parser)
    bs = bsub.add_parser("scan", parents=[common])
    bs.add_argument("--grid", nargs="+", required=True, help="m=3..9 n=2..3 caps=1..3")
    bs.add_argument("--budget", type=int, default=200_000, help="max face count per instance")
    bs.add_argument("--all-orders", action="store_true", help="also scan permuted cap sequences")
    bs.set_defaults(func=cmd_bounds)

    t = sub.add_parser("tverberg", parents=[common], help="colored Tverberg search")
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--r", type=int, required=True)
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--trials", type=int, default=1)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--points")
    t.add_argument("--budget", type=int, default=1_000_000, help="max hull tests per instance")
    t.set_defaults(func=cmd_tverberg)

    r = sub.add_parser("report", parents=[common], help="published-claim fixtures")
    r.add_argument("--only", nargs="*")
    r.set_defaults(func=cmd_report)
    return p


def dispatch(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing subcommand")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
        t0 = time.perf_counter()
        code = args.func(args)
        log.info("wall time %.3fs", time.perf_counter() - t0)
        return code
    except UsageError as e:
        sys.stderr.write(f"multichess: {e}\n")
        return 2
    except (OSError, json.JSONDecodeError) as e:
        sys.stderr.write(f"multichess: {e}\n")
        return 2


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
