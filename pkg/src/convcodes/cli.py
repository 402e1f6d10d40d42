"""Command-line interface: ``convcodes <command> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or
precondition error, 3 I/O or format error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from math import comb
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .bounds import access_lower_bound, baseline_access, max_unchanged, read_lower_bound_per_stripe
from .constructions import TRIVIAL, construct, field_of_order
from .conversion import MessageBuffer, convert, decode, encode_initial, reencode_baseline
from .errors import ConvCodeError, FormatError, SingularSubmatrix
from .matrix import is_superregular
from .params import MergeParams
from .verify import (
    MDS_SUBSET_LIMIT,
    check_plan_soundness,
    check_stability,
    is_block_constructible,
    is_mds_by_erasure,
    min_read_set_search,
)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _params(args) -> MergeParams:
    return MergeParams(args.lam, args.ki, args.ri, args.rf)


def _load_code(path):
    return io.read_manifest(path)


def _check_ref(stripe, ref: str, where) -> None:
    if stripe.code_ref and stripe.code_ref != ref:
        raise UsageError(f"{where} was encoded under a different code (codeRef {stripe.code_ref[:12]}..., manifest {ref[:12]}...)")


def _load_initial(root, code, ref):
    stripes = []
    for g in range(code.params.lam):
        d = io.stripe_dir(root, g)
        s, _ = io.read_stripe(d, code.field)
        _check_ref(s, ref, d)
        stripes.append(s)
    return stripes


def cmd_construct(args) -> int:
    p = _params(args)
    field = field_of_order(args.field_q) if args.field_q is not None else None
    code = construct(args.scheme, p, field, s=args.s, char=args.char)
    digest = io.write_manifest(code, args.out)
    print(f"scheme: {code.scheme}" + (f" (s={code.s})" if code.s is not None else ""))
    print(f"field: {code.field} (q = {code.field.q})")
    print(f"access lower bound: {access_lower_bound(p)}")
    print(f"manifest: {args.out} sha256={digest}")
    return EXIT_OK


def cmd_encode(args) -> int:
    code, ref = _load_code(args.code)
    p = code.params
    if args.input is not None:
        try:
            data = Path(args.input).read_bytes()
        except OSError as exc:
            raise FormatError(f"cannot read {args.input}: {exc}") from exc
        try:
            msg = io.message_from_bytes(code.field, p.kF, data)
        except FormatError as exc:
            raise UsageError(str(exc)) from exc
    else:
        msg = MessageBuffer.random(code.field, p.kF, args.random, random.Random(args.seed))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for g, stripe in enumerate(encode_initial(msg, code)):
        io.write_stripe(stripe, io.stripe_dir(out, g), code.field, ref)
    if args.input is None:
        (out / "message.bin").write_bytes(io.rows_to_bytes(code.field, msg.symbols))
    print(f"encoded {p.lam} stripes of [{p.nI},{p.kI}] with B = {msg.block_length} into {out}")
    return EXIT_OK


def _run_conversion(args, fn) -> int:
    code, ref = _load_code(args.code)
    stripes = _load_initial(args.stripes, code, ref)
    final, report = fn(stripes, code)
    io.write_stripe(final, args.out, code.field, ref)
    body = io.canonical_json(report.to_dict())
    if args.report:
        Path(args.report).write_bytes(body)
    print(body.decode())
    return EXIT_OK


def cmd_convert(args) -> int:
    return _run_conversion(args, convert)


def cmd_reencode(args) -> int:
    return _run_conversion(args, reencode_baseline)


def _parse_erase(text: Optional[str]) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) - 1 for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"--erase expects comma-separated block numbers, got {text!r}") from exc


def cmd_decode(args) -> int:
    code, ref = _load_code(args.code)
    p = code.params
    root = Path(args.stripe)
    if (root / io.STRIPE_MANIFEST).exists():
        dirs = [root]
    elif io.stripe_dir(root, 0).is_dir():
        dirs = [io.stripe_dir(root, g) for g in range(p.lam)]
    else:
        raise FormatError(f"{root} holds neither a stripe nor an encode output")
    erase = _parse_erase(args.erase)
    rows = []
    for d in dirs:
        stripe, _ = io.read_stripe(d, code.field)
        _check_ref(stripe, ref, d)
        if (stripe.n, stripe.k) == (p.nI, p.kI):
            parity = code.PI
        elif (stripe.n, stripe.k) == (p.nF, p.kF):
            parity = code.PF
        else:
            raise UsageError(f"{d} is an [{stripe.n},{stripe.k}] stripe, not one of this code's")
        if any(not 0 <= e < stripe.n for e in erase):
            raise UsageError(f"--erase indices must lie in 1..{stripe.n}")
        available = [i for i in stripe.available if i not in set(erase)]
        rows += decode(stripe, available, parity)
    Path(args.out).write_bytes(io.rows_to_bytes(code.field, rows))
    print(f"decoded {len(rows)} data blocks from {len(dirs)} stripe(s) into {args.out}")
    return EXIT_OK


def _mds_verdict(G, P) -> tuple[bool, str]:
    k, n = G.shape
    if comb(n, k) <= MDS_SUBSET_LIMIT:
        return is_mds_by_erasure(G), f"exhaustive erasure, {comb(n, k)} subsets"
    return is_superregular(P), "superregular parity matrix"


def cmd_verify(args) -> int:
    code, _ = _load_code(args.code)
    p = code.params
    everything = args.all or not (args.mds or args.constructible or args.min_reads or args.plan)
    ok = True

    def report(name: str, passed: bool, detail: str) -> None:
        nonlocal ok
        ok = ok and passed
        print(f"{name}: {'PASS' if passed else 'FAIL'} ({detail})")

    if everything or args.mds:
        for name, G, P in (("mds initial", code.GI, code.PI), ("mds final", code.GF, code.PF)):
            passed, how = _mds_verdict(G, P)
            report(name, passed, how)
    if everything or args.constructible:
        if code.scheme == TRIVIAL:
            print("constructible: SKIP (trivial scheme)")
        elif p.rI < p.rF:
            print("constructible: SKIP (rI < rF)")
        else:
            w = is_block_constructible(code.PF, code.PI, p.rF)
            report("constructible", w is not None,
                   f"t = {p.rF}, witness {[[c + 1 for c in S] for S in w]}" if w else f"no witness with t = {p.rF}")
    if everything or args.min_reads:
        found = min_read_set_search(code)
        want = p.lam * read_lower_bound_per_stripe(p)
        if code.scheme == TRIVIAL:
            print(f"min-reads: INFO (min |D| = {found}, lambda * per-stripe bound = {want})")
        else:
            report("min-reads", found == want, f"min |D| = {found}, lambda * per-stripe bound = {want}")
    if everything or args.plan:
        report("stability", check_stability(code), f"{len(code.plan.new_blocks)} new blocks")
        report("plan soundness", check_plan_soundness(code), f"{code.plan.reads} reads")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bounds(args) -> int:
    p = _params(args)
    bound, naive = access_lower_bound(p), baseline_access(p)
    print(f"parameters: {p}")
    print(f"access lower bound: {bound}")
    print(f"reads per stripe (min): {read_lower_bound_per_stripe(p)}")
    print(f"max unchanged blocks: {max_unchanged(p)}")
    print(f"naive re-encoding: {naive}")
    if naive:
        print(f"savings: {100 * (naive - bound) / naive:.0f}%")
    return EXIT_OK


def _add_params(sp, required: bool = True) -> None:
    sp.add_argument("--lambda", dest="lam", type=int, required=required)
    sp.add_argument("--ki", type=int, required=required)
    sp.add_argument("--ri", type=int, required=required)
    sp.add_argument("--rf", type=int, required=required)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="convcodes", description="Access-optimal convertible codes for stripe merging.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("construct", help="build a code and write its manifest")
    sp.add_argument("--scheme", default="auto", choices=["auto", "general", "hankel1", "hankel2", "hankel-s", "trivial"])
    _add_params(sp)
    sp.add_argument("--s", type=int)
    sp.add_argument("--char", type=int, default=2)
    sp.add_argument("--field-q", type=int)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("encode", help="encode a message into lambda initial stripes")
    sp.add_argument("--code", required=True)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--random", type=int, metavar="B")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_encode)

    for name, fn, text in (("convert", cmd_convert, "merge stripes with the code's conversion plan"),
                           ("reencode", cmd_reencode, "merge stripes by reading all data and re-encoding")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--code", required=True)
        sp.add_argument("--stripes", required=True)
        sp.add_argument("--out", required=True)
        sp.add_argument("--report")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("decode", help="recover the message from a stripe store")
    sp.add_argument("--code", required=True)
    sp.add_argument("--stripe", required=True)
    sp.add_argument("--erase")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("verify", help="run the brute-force checks on a code")
    sp.add_argument("--code", required=True)
    sp.add_argument("--mds", action="store_true")
    sp.add_argument("--constructible", action="store_true")
    sp.add_argument("--min-reads", action="store_true")
    sp.add_argument("--plan", action="store_true")
    sp.add_argument("--all", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bounds", help="print access-cost bounds")
    _add_params(sp)
    sp.set_defaults(func=cmd_bounds)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (FormatError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SingularSubmatrix as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (UsageError, ConvCodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
