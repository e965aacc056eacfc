"""Command-line entry point: ``lefcalc pencil|mcg|orbit|equiv ...``.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 caps exhausted with a partial result.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any

from . import io
from .exceptional import (
    CalculusError,
    PencilState,
    adjunction_check,
    apply_sequence,
    as_sequence,
    closed_forms,
    normalize,
)
from .invariants import euler_characteristic, signature_details
from .orbits import equivalent, hurwitz_orbit
from .search import family_final_data, paper_family, search_matching, verify_family
from .words import (
    WordError,
    global_conjugate,
    hurwitz_move,
    monodromy_fingerprint,
    partial_conjugate,
    word_product,
)

OK, VERIFY_FAILED, INPUT_ERROR, PARTIAL = 0, 1, 2, 3

log = logging.getLogger("lefcalc")


def parse_ints(text: str) -> list[int]:
    body = text.strip().strip("[]()").strip()
    if not body:
        return []
    try:
        return [int(x) for x in body.replace(" ", "").split(",")]
    except ValueError:
        raise io.InputError(f"cannot parse integer list {text!r}") from None


def parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise io.InputError(f"range must look like a..b, got {text!r}") from None


def _state_obj(s: PencilState) -> dict:
    return io.pencil_to_obj(s)


def _emit(args, obj: dict, text: str) -> None:
    if args.json:
        if args.seed is not None:
            obj = dict(obj, seed=args.seed)
        sys.stdout.write(io.dumps(obj))
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def cmd_pencil_apply(args) -> int:
    start = io.load_pencil(args.pencil, strict=args.strict)
    seq = as_sequence(parse_ints(args.seq))
    out = apply_sequence(start, seq, strict=args.strict)
    obj: dict[str, Any] = {
        "start": _state_obj(start),
        "sequence": list(seq),
        "trace": [_state_obj(s) for s in out.trace],
        "final": _state_obj(out.final),
        "blowup_count": io.enc_int(out.blowup_count),
        "normalized": [io.enc_int(x) for x in normalize(out.final.data)],
    }
    lines = [f"start {start}  sequence {seq}"]
    for i, s in enumerate(out.trace[1:], 1):
        lines.append(f"  {'blow-up' if i % 2 else 'double '} -> {s}")
    lines.append(f"final {out.final}  M = {out.blowup_count}")
    status = OK
    if len(start.data) <= 1:
        M, g = closed_forms(start.genus, start.data.base_points, seq)
        match = (M, g) == (out.blowup_count, out.final.genus)
        obj["closed_forms"] = {"M": io.enc_int(M), "g": io.enc_int(g), "match": match}
        lines.append(f"closed forms M = {M}, g = {g}: {'match' if match else 'MISMATCH'}")
        if not match:
            status = VERIFY_FAILED
    _emit(args, obj, "\n".join(lines))
    return status


def cmd_pencil_family(args) -> int:
    g0 = args.g0 if args.g0 is not None else (args.m0 + 3) // 2
    seq = paper_family(args.m0, args.n)
    closed = family_final_data(args.m0, args.n)
    out = apply_sequence(PencilState.of(g0, (args.m0,)), seq, strict=args.strict)
    match = out.final.data == closed
    obj = {
        "g0": g0, "m0": args.m0, "n": args.n,
        "sequence": list(seq),
        "closed_form_data": list(closed),
        "simulated": _state_obj(out.final),
        "blowup_count": io.enc_int(out.blowup_count),
        "match": match,
    }
    text = (
        f"D({args.n}) = {seq} from (g={g0},({args.m0}))\n"
        f"closed form {closed}, simulated {out.final.data}: {'match' if match else 'MISMATCH'}\n"
        f"M = {out.blowup_count}, g = {out.final.genus}"
    )
    _emit(args, obj, text)
    return OK if match else VERIFY_FAILED


def cmd_pencil_search(args) -> int:
    fam = search_matching(
        args.g0, args.m0, args.count, args.max_d, args.k_bound, strict=args.strict, jobs=args.jobs
    )
    report = verify_family(fam, strict=args.strict)
    obj = io.family_to_obj(fam)
    obj["verified"] = report.passed
    lines = [
        f"{len(fam)} sequence(s) from (g={fam.start[0]},({fam.start[1]})) "
        f"sharing M = {fam.shared[0]}, g = {fam.shared[1]}"
    ]
    for s, d in zip(fam.sequences, fam.datasets):
        lines.append(f"  {s} -> {d}  normalized {normalize(d)}")
    if not fam.complete:
        lines.append(f"partial result: {len(fam)} < {fam.requested} within bounds")
    lines.append(f"verification: {'pass' if report.passed else 'FAIL'}")
    _emit(args, obj, "\n".join(lines))
    if not fam.complete:
        return PARTIAL
    return OK if report.passed else VERIFY_FAILED


def cmd_pencil_verify(args) -> int:
    fam = io.load_family(args.family)
    report = verify_family(fam, strict=args.strict)
    obj = {
        "passed": report.passed,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks],
    }
    lines = [f"{'ok  ' if c.passed else 'FAIL'} {c.name} {c.detail}" for c in report.checks]
    lines.append("all checks pass" if report.passed else "verification failed")
    _emit(args, obj, "\n".join(lines))
    return OK if report.passed else VERIFY_FAILED


def _matrix_text(m) -> str:
    return "\n".join("  [" + " ".join(f"{x:>3}" for x in r) + "]" for r in m)


def cmd_mcg(args) -> int:
    f = io.load_factorization(args.fact, strict=args.strict)
    if args.what == "product":
        P = word_product(f)
        obj = {"product": [list(r) for r in P], "identity": P == tuple(
            tuple(int(i == j) for j in range(len(P))) for i in range(len(P)))}
        _emit(args, obj, _matrix_text(P) if P else "(empty matrix)")
    elif args.what == "euler":
        e = euler_characteristic(f, as_pencil=args.pencil)
        _emit(args, {"euler_characteristic": e, "pencil": args.pencil}, str(e))
    else:
        res = signature_details(f, as_pencil=args.pencil)
        obj = {"signature": res.value, "pencil": args.pencil, "closed": res.closed}
        text = str(res.value)
        if not res.closed:
            text += "  (warning: word product is not the identity)"
        _emit(args, obj, text)
    return OK


def cmd_mcg_hurwitz(args) -> int:
    f = io.load_factorization(args.fact, strict=args.strict)
    g = hurwitz_move(f, args.index, args.dir)
    obj = io.factorization_to_obj(g)
    _emit(args, obj, io.dumps(obj))
    return OK


def cmd_mcg_conjugate(args) -> int:
    f = io.load_factorization(args.fact, strict=args.strict)
    alpha = parse_ints(args.alpha)
    if args.range:
        lo, hi = parse_range(args.range)
        g = partial_conjugate(
            f, lo, hi, alpha, args.q, strict=args.strict, allow_twisted=args.allow_twisted
        )
    else:
        from .symplectic import transvection

        g = global_conjugate(f, transvection(alpha, args.q))
    obj = io.factorization_to_obj(g)
    _emit(args, obj, io.dumps(obj))
    return OK


def cmd_mcg_fingerprint(args) -> int:
    f = io.load_factorization(args.fact, strict=args.strict)
    fp = monodromy_fingerprint(f, args.cap)
    obj = {
        "rank": fp.rank,
        "classes": [{"class": list(c), "count": n} for c, n in fp.classes],
        "orbit_size": fp.orbit_size,
        "truncated": fp.truncated,
    }
    text = (
        f"rank {fp.rank}\n"
        + "".join(f"  {list(c)} x{n}\n" for c, n in fp.classes)
        + f"orbit size {fp.orbit_size}{' (truncated)' if fp.truncated else ''}"
    )
    _emit(args, obj, text)
    return OK


def _load_conjugators(path) -> list[tuple[int, ...]]:
    if not path:
        return []
    raw = json.loads(open(path).read())
    if isinstance(raw, dict):
        raw = raw.get("classes", [])
    return [tuple(io.dec_int(x, f"conjugators[{i}]") for x in c) for i, c in enumerate(raw)]


def cmd_orbit(args) -> int:
    f = io.load_factorization(args.fact, strict=args.strict)
    rep = hurwitz_orbit(f, args.depth, args.size, _load_conjugators(args.conjugators), args.max_q)
    reps = [[list(c) + ([] if not s else ["separating"]) for c, s in key] for key in rep.representatives]
    obj = {
        "visited": rep.visited,
        "truncated": rep.truncated,
        "depth_reached": rep.depth_reached,
        "moves": list(rep.moves),
        "representatives": reps,
    }
    text = f"visited {rep.visited}{' (truncated)' if rep.truncated else ''}, depth {rep.depth_reached}"
    _emit(args, obj, text)
    return PARTIAL if rep.truncated else OK


def cmd_equiv(args) -> int:
    f1 = io.load_factorization(args.f1, strict=args.strict)
    f2 = io.load_factorization(args.f2, strict=args.strict)
    res = equivalent(f1, f2, args.depth, args.size, _load_conjugators(args.conjugators), args.max_q)
    obj = {"verdict": res.verdict.value, "reason": res.reason, "caveats": list(res.caveats)}
    _emit(args, obj, f"{res.verdict.value}: {res.reason}")
    return PARTIAL if res.reason == "caps reached" else OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="lefcalc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    pencil = sub.add_parser("pencil", help="exceptional-data calculus").add_subparsers(
        dest="pcmd", required=True)
    a = pencil.add_parser("apply", parents=[common])
    a.add_argument("pencil")
    a.add_argument("seq", help="comma separated, e.g. 9,13,8")
    a.set_defaults(func=cmd_pencil_apply)
    a = pencil.add_parser("family", parents=[common])
    a.add_argument("--m0", type=int, required=True)
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--g0", type=int, default=None)
    a.set_defaults(func=cmd_pencil_family)
    a = pencil.add_parser("search", parents=[common])
    a.add_argument("--g0", type=int, required=True)
    a.add_argument("--m0", type=int, required=True)
    a.add_argument("--count", type=int, required=True)
    a.add_argument("--max-d", type=int, required=True)
    a.add_argument("--k-bound", type=int, default=64)
    a.set_defaults(func=cmd_pencil_search)
    a = pencil.add_parser("verify", parents=[common])
    a.add_argument("family")
    a.set_defaults(func=cmd_pencil_verify)

    mcg = sub.add_parser("mcg", help="twist words").add_subparsers(dest="mcmd", required=True)
    for what in ("product", "euler", "signature"):
        a = mcg.add_parser(what, parents=[common])
        a.add_argument("fact")
        a.add_argument("--pencil", action="store_true")
        a.set_defaults(func=cmd_mcg, what=what)
    a = mcg.add_parser("hurwitz", parents=[common])
    a.add_argument("fact")
    a.add_argument("--index", type=int, required=True)
    a.add_argument("--dir", choices=("left", "right"), default="right")
    a.set_defaults(func=cmd_mcg_hurwitz)
    a = mcg.add_parser("conjugate", parents=[common])
    a.add_argument("fact")
    a.add_argument("--range", default=None, help="a..b (1-based); omit for a global conjugation")
    a.add_argument("--alpha", required=True)
    a.add_argument("--q", type=int, default=1)
    a.add_argument("--allow-twisted", action="store_true")
    a.set_defaults(func=cmd_mcg_conjugate)
    a = mcg.add_parser("fingerprint", parents=[common])
    a.add_argument("fact")
    a.add_argument("--cap", type=int, default=1000)
    a.set_defaults(func=cmd_mcg_fingerprint)

    for name, func, text in (("orbit", cmd_orbit, "bounded Hurwitz orbit"),
                             ("equiv", cmd_equiv, "equivalence screen and search")):
        a = sub.add_parser(name, parents=[common], help=text)
        if name == "orbit":
            a.add_argument("fact")
        else:
            a.add_argument("f1")
            a.add_argument("f2")
        a.add_argument("--depth", type=int, default=4)
        a.add_argument("--size", type=int, default=10_000)
        a.add_argument("--conjugators", default=None, help="JSON list of classes")
        a.add_argument("--max-q", type=int, default=1)
        a.set_defaults(func=func)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (io.InputError, CalculusError, WordError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
