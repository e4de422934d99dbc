"""Command line front end for the lattice toolkit.

Geometry queries (short, isometric, embeds, candidates), local queries
(local hilbert, local genus, local buried), the rank three burial
decision (buried3), the discriminant scan (scan-conjecture), and the
full verification registry (verify-paper).  Output is JSON; the scan
emits one JSON report per line.  Exit codes follow the query where one
is boolean: 0 for the affirmative answer, 1 for the negative one, 2 for
usage or input errors.
"""

import argparse
import json
import os
import sys
from math import isqrt

from .buried import AlreadyBuriedInRank2, NotPrimitiveInput, buried3, scan_discriminant
from .enumerate import is_isometric, short_vectors
from .forms_core import read_lattice_file
from .localfield import (
    REAL_PLACE,
    buried_in_genus,
    buried_over_qp,
    buried_over_zp,
    hilbert,
    jordan_decomposition,
    same_genus,
    zp_represents,
)
from .paperlab import CHECK_GROUPS, VerifyConfig, results_to_json, run_checks
from .represent import embeds, run_script

from sympy import primefactors


def _emit(obj):
    print(json.dumps(obj, sort_keys=True, indent=2))


def _gram(lat):
    return [list(row) for row in lat.gram]


def _load(path):
    try:
        return read_lattice_file(path)
    except (OSError, ValueError) as exc:
        raise SystemExit(f"cannot load lattice from {path}: {exc}")


def _place(text):
    if text in ("inf", "oo", "real"):
        return REAL_PLACE
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"place must be a prime or 'inf', got {text!r}")


def cmd_short(args):
    lat = _load(args.file)
    found = short_vectors(lat, args.bound)
    _emit([[list(coords), norm] for coords, norm in found.vectors])
    return 0


def cmd_isometric(args):
    l1 = _load(args.first)
    l2 = _load(args.second)
    iso = is_isometric(l1, l2)
    _emit({
        "isometric": bool(iso),
        "witness": [list(row) for row in iso.witness] if iso else None,
    })
    return 0 if iso else 1


def cmd_embeds(args):
    source = _load(args.source)
    target = _load(args.target)
    witness = embeds(source, target)
    if witness is None:
        _emit(None)
        return 1
    _emit([list(row) for row in witness.T])
    return 0


def cmd_candidates(args):
    try:
        cs = run_script(args.script)
    except KeyError as exc:
        raise SystemExit(str(exc))
    _emit({
        "script": args.script,
        "rank": cs.rank,
        "exhaustive": bool(cs.exhaustive),
        "count": len(cs.members),
        "members": [_gram(m) for m in cs.members],
        "justification": cs.justification,
    })
    return 0


def cmd_local_hilbert(args):
    value = hilbert(args.a, args.b, args.p)
    _emit({"a": args.a, "b": args.b, "p": str(args.p), "hilbert": value})
    return 0


def _genus_places(l1, l2):
    places = {}
    for p in sorted(set(primefactors(2 * max(l1.det(), 1)))):
        if p == 2:
            places["2"] = bool(zp_represents(l1, l2, 2) and zp_represents(l2, l1, 2))
        else:
            places[str(p)] = jordan_decomposition(l1, p) == jordan_decomposition(l2, p)
    return places


def cmd_local_genus(args):
    l1 = _load(args.first)
    l2 = _load(args.second)
    verdict = same_genus(l1, l2)
    out = {
        "same_genus": verdict,
        "rank": [l1.rank, l2.rank],
        "det": [l1.det(), l2.det()],
    }
    if l1.rank == l2.rank and l1.det() == l2.det():
        out["places"] = _genus_places(l1, l2)
    _emit(out)
    return 0 if verdict else 1


def cmd_local_buried(args):
    l1 = _load(args.first)
    l2 = _load(args.second)
    n = args.rank
    if args.p is not None:
        entry = {"space": buried_over_qp(l1, l2, n, args.p)}
        if args.p != REAL_PLACE:
            entry["ring"] = buried_over_zp(l1, l2, n, args.p)
        _emit({"rank": n, "place": str(args.p), **entry})
        return 0 if entry.get("ring", entry["space"]) else 1
    places = {}
    for p in sorted(set(primefactors(2 * l1.det() * l2.det()))):
        places[str(p)] = {
            "space": buried_over_qp(l1, l2, n, p),
            "ring": buried_over_zp(l1, l2, n, p),
        }
    places["inf"] = {"space": buried_over_qp(l1, l2, n, REAL_PLACE)}
    verdict = buried_in_genus(l1, l2, n)
    _emit({"rank": n, "in_genus": verdict, "places": places})
    return 0 if verdict else 1


def _verdict_to_dict(verdict):
    return {
        "status": verdict.status,
        "witness": _gram(verdict.witness) if verdict.witness is not None else None,
        "bound": verdict.bound,
        "trace": [list(step) for step in verdict.trace],
    }


def cmd_buried3(args):
    l1 = _load(args.first)
    l2 = _load(args.second)
    a_max = args.amax if args.amax is not None else 4 * max(isqrt(l1.det() * l2.det()), 1)
    try:
        verdict = buried3(l1, l2, a_max)
    except AlreadyBuriedInRank2 as exc:
        verdict = exc.verdict
    except NotPrimitiveInput as exc:
        raise SystemExit(str(exc))
    _emit(_verdict_to_dict(verdict))
    return 0 if verdict.status == "Buried" else 1


def _report_to_dict(report):
    return {
        "d": report.d,
        "pairs_checked": report.pairs_checked,
        "a_bound": report.a_bound,
        "counterexamples": [[_gram(l1), _gram(l2)] for l1, l2 in report.counterexamples],
        "errors": [
            [[list(r) for r in g1], [list(r) for r in g2], msg]
            for g1, g2, msg in report.errors
        ],
    }


def cmd_scan(args):
    if args.d_from < 1 or args.d_to < args.d_from:
        raise SystemExit("need 1 <= --from <= --to")
    resume = args.resume
    if resume:
        os.makedirs(resume, exist_ok=True)
    ds = list(range(args.d_from, args.d_to + 1))
    cached = {}
    pending = []
    for d in ds:
        path = os.path.join(resume, f"scan-{d}.json") if resume else None
        if path and os.path.exists(path):
            with open(path) as fh:
                cached[d] = json.load(fh)
        else:
            pending.append(d)
    if args.jobs > 1 and len(pending) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            fresh = dict(zip(pending, pool.map(scan_discriminant, pending)))
    else:
        fresh = {d: scan_discriminant(d) for d in pending}
    bad = False
    for d in ds:
        if d in cached:
            payload = cached[d]
        else:
            payload = _report_to_dict(fresh[d])
            if resume:
                with open(os.path.join(resume, f"scan-{d}.json"), "w") as fh:
                    json.dump(payload, fh, sort_keys=True)
        if payload["counterexamples"]:
            bad = True
        print(json.dumps(payload, sort_keys=True))
    return 1 if bad else 0


def cmd_verify(args):
    if args.check:
        group = args.check.split("/")[0]
        if group not in CHECK_GROUPS:
            raise SystemExit(
                f"unknown check {args.check!r}; groups are {', '.join(CHECK_GROUPS)}"
            )
        names = [group]
    else:
        names = None
    cfg = VerifyConfig(bound=args.bound, a7_gram_path=args.a7_gram)
    jobs = int(os.environ.get("QLAT_JOBS", "1"))
    results = run_checks(names, cfg, jobs=jobs)
    if args.check and "/" in args.check:
        results = [r for r in results if r.check == args.check]
        if not results:
            raise SystemExit(f"no check named {args.check!r} in group {names[0]}")
    for r in results:
        line = f"{r.status:8s} {r.check}"
        if r.status == "Skipped":
            line += f"  ({r.reason})"
        print(line)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(results_to_json(results))
    failed = [r for r in results if r.status == "Fail"]
    print(f"{len(results)} checks: "
          f"{sum(r.status == 'Pass' for r in results)} passed, "
          f"{len(failed)} failed, "
          f"{sum(r.status == 'Skipped' for r in results)} skipped")
    return 1 if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qlat",
        description="Exact arithmetic for definite integral lattices: "
                    "representation, local conditions, burial, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("short", help="short vectors up to a norm bound")
    p.add_argument("file")
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_short)

    p = sub.add_parser("isometric", help="decide isometry of two lattices")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_isometric)

    p = sub.add_parser("embeds", help="find an isometric embedding")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(func=cmd_embeds)

    p = sub.add_parser("candidates", help="run a shipped candidate stage script")
    p.add_argument("--script", required=True)
    p.set_defaults(func=cmd_candidates)

    local = sub.add_parser("local", help="local (place-by-place) queries")
    lsub = local.add_subparsers(dest="local_command", required=True)

    p = lsub.add_parser("hilbert", help="Hilbert symbol at a place")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("p", type=_place)
    p.set_defaults(func=cmd_local_hilbert)

    p = lsub.add_parser("genus", help="decide genus equality")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_local_genus)

    p = lsub.add_parser("buried", help="local burial criteria for a binary pair")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--p", type=_place, default=None)
    p.set_defaults(func=cmd_local_buried)

    p = sub.add_parser("buried3", help="decide rank three burial of a binary pair")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--amax", type=int, default=None)
    p.set_defaults(func=cmd_buried3)

    p = sub.add_parser("scan-conjecture", help="scan discriminants for stubborn pairs")
    p.add_argument("--from", dest="d_from", type=int, required=True)
    p.add_argument("--to", dest="d_to", type=int, required=True)
    p.add_argument("--jobs", type=int, default=int(os.environ.get("QLAT_JOBS", "1")))
    p.add_argument("--resume", default=None, help="directory for per-discriminant reports")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify-paper", help="run the verification check registry")
    p.add_argument("--check", default=None, help="group or single check id")
    p.add_argument("--bound", type=int, default=2000)
    p.add_argument("--json", dest="json_out", default=None, help="also write a JSON report")
    p.add_argument("--a7-gram", dest="a7_gram", default=None,
                   help="Gram matrix file for the optional rank seven glue check")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
