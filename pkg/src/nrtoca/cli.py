"""Command-line front end: ``nrtoca construct|verify|bound|oracle|sphere``.

Exit status: 0 on success or a passing verification, 1 when a verification
fails, 2 on usage errors (bad arguments, unknown rule, malformed input,
caps exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence, TextIO

from . import bounds, codes, constructions as oc, oracle
from .arrays import FormatError, OrderedArray, instantiate_wildcards, read_array, verify_ca, verify_oca, write_array
from .poset import sphere_profile

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _need(args: argparse.Namespace, *names: str) -> list[int]:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"rule {args.rule!r} needs " + ", ".join(f"--{n}" for n in missing))
    return [getattr(args, n) for n in names]


def _default_ca(v: int, m: int) -> OrderedArray:
    if v == 2:
        return oc.kleitman_spencer_ca(m)
    return oc.bush_ca(v, m)


def _alphabet_augment(a: argparse.Namespace) -> OrderedArray:
    m, v = _need(a, "m", "v")
    w = v - 1
    base = oc.chain_project(oc.ooa_rs(w, 3, m)) if m <= w + 1 else None
    if base is None:
        raise UsageError(f"no built-in OCA(.;3,{m},2,{w}) ingredient; need m <= v")
    return oc.augment_alphabet_s3(base, _default_ca(w, m - 1), _default_ca(w, m))


def _fuse(a: argparse.Namespace) -> OrderedArray:
    v, t, m = _need(a, "v", "t", "m")
    return oc.fuse(oc.ooa_rs(v + 1, t, m))


def _from_bound(a: argparse.Namespace):
    if a.kind == "k":
        q, m, s, R = _need(a, "q", "m", "s", "R")
        return bounds.materialize(bounds.best_k_upper(q, m, s, R))
    t, m, s, v = _need(a, "t", "m", "s", "v")
    return bounds.materialize(bounds.best_ocan_upper(t, m, s, v))


RULES: dict[str, tuple[str, Callable[[argparse.Namespace], object]]] = {
    "ooa-rs": ("polynomial OOA(v^t;t,m,t,v); --v --t --m",
               lambda a: oc.ooa_rs(*_need(a, "v", "t", "m"))),
    "bush": ("OA(v^2;2,m,v); --v --m", lambda a: oc.bush_ca(*_need(a, "v", "m"))),
    "kleitman-spencer": ("binary strength-2 CA; --m", lambda a: oc.kleitman_spencer_ca(*_need(a, "m"))),
    "strength2-ca": ("OCA(N;2,m,2,v) from a CA; --v --m",
                     lambda a: oc.strength2_from_ca(_default_ca(*_need(a, "v", "m")))),
    "fuse": ("fuse the polynomial OOA over v+1 symbols; --v --t --m", _fuse),
    "derive-block": ("derive the polynomial OOA along a block; --v --t --m",
                     lambda a: oc.derive_block(oc.ooa_rs(*_need(a, "v", "t", "m")))),
    "derive-depth": ("derive the polynomial OOA along the chain; --v --t --m",
                     lambda a: oc.derive_depth(oc.ooa_rs(*_need(a, "v", "t", "m")))),
    "alphabet-augment": ("OCA(N;3,m,3,v) from (v-1)-ary ingredients; --m --v", _alphabet_augment),
    "augment-block": ("one block augmentation of the polynomial OOA; --v --t --m",
                      lambda a: oc.augment_block(oc.ooa_rs(*_need(a, "v", "t", "m")))),
    "t1-example": ("the 16-row OCA(3,4,3,2)", lambda a: oc.augmented_ooa_example(keep_wildcards=a.keep_wildcards)),
    "augmented-ooa": ("OCA(t,v+2,t,v) by block augmentation; --t --v",
                      lambda a: oc.augmented_ooa(*_need(a, "t", "v"))),
    "tj": ("two-block gadget T^j; --v --s --j", lambda a: oc.build_tj(*_need(a, "v", "s", "j"))),
    "zero-ideal": ("code vanishing on an ideal; --q --m --s --R",
                   lambda a: codes.zero_ideal_code(*_need(a, "q", "m", "s", "R"))),
    "code-even": ("paired-row code, m=2k, R=ks; --q --s --k", lambda a: codes.code_even(*_need(a, "q", "s", "k"))),
    "code-odd": ("paired-row code, m=2k+1, R=(k+1)s-j; --q --s --k --j",
                 lambda a: codes.code_odd(*_need(a, "q", "s", "k", "j"))),
    "code-even-extended": ("paired-row code plus a zero block; --q --s --k",
                           lambda a: codes.extend_block(codes.code_even(*_need(a, "q", "s", "k")))),
    "constant-code": ("q constant words, radius ms-t; --q --m --s [--t]",
                      lambda a: codes.constant_code(*_need(a, "q", "m", "s"), a.t)),
    "bound": ("materialize the engine's best record; --kind ocan|k and its parameters", _from_bound),
}


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="seed for randomized components (default 0)")
    p.add_argument("--threads", type=int, default=1, help="worker threads for verification")
    return p


def _params(p: argparse.ArgumentParser, names: str) -> None:
    for n in names:
        p.add_argument(f"--{n}", type=int)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="nrtoca", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build an array or code by rule name")
    c.add_argument("--rule", required=True, choices=sorted(RULES))
    _params(c, ["t", "m", "s", "v", "q", "k", "j", "R"])
    c.add_argument("--kind", choices=["ocan", "k"], default="ocan", help="for --rule bound")
    c.add_argument("--keep-wildcards", action="store_true", help="write free entries as '*'")
    c.add_argument("-o", "--output", type=Path)

    v = sub.add_parser("verify", parents=[common], help="exhaustively verify an array or code file")
    v.add_argument("--kind", choices=["oca", "ca", "code"], default="oca")
    v.add_argument("--fill", type=int, default=0, help="symbol substituted for '*' entries")
    v.add_argument("--max-violations", type=int, default=10)
    v.add_argument("file", type=Path)

    b = sub.add_parser("bound", parents=[common], help="best upper bound with provenance")
    b.add_argument("--kind", choices=["ocan", "k"], default="ocan")
    _params(b, ["t", "m", "s", "v", "q", "R"])
    b.add_argument("--depth", type=int, default=bounds.DEFAULT_DEPTH)
    b.add_argument("--trace", action="store_true")
    b.add_argument("--nonconstructive", action="store_true", help="also use rules without a construction")
    b.add_argument("--emit-table", type=int, choices=[2, 3])
    b.add_argument("--format", choices=["text", "records"], default="text")

    o = sub.add_parser("oracle", parents=[common], help="brute-force ground truth for tiny spaces")
    osub = o.add_subparsers(dest="oracle_command", required=True)
    for name, helptext in (("exact-k", "exact minimum covering-code size"), ("greedy", "greedy covering code")):
        op = osub.add_parser(name, parents=[common], help=helptext)
        for n in ("q", "m", "s", "R"):
            op.add_argument(f"--{n}", type=int, required=True)
        op.add_argument("-o", "--output", type=Path)
        if name == "exact-k":
            op.add_argument("--cap", type=int, default=oracle.EXACT_SIZE_CAP)

    sp = sub.add_parser("sphere", parents=[common], help="NRT ball volume and ideal census")
    for n in ("q", "m", "s", "R"):
        sp.add_argument(f"--{n}", type=int, required=True)
    return parser


def _emit(text: str, path: Path | None, out: TextIO) -> None:
    if path is None:
        out.write(text)
    else:
        path.write_text(text)


def _cmd_construct(a: argparse.Namespace, out: TextIO) -> int:
    obj = RULES[a.rule][1](a)
    if isinstance(obj, OrderedArray):
        if not a.keep_wildcards and a.rule != "tj":
            obj = instantiate_wildcards(obj, 0)
        text = write_array(obj)
    else:
        text = codes.write_code(obj)
    _emit(text, a.output, out)
    return EXIT_OK


def _cmd_verify(a: argparse.Namespace, out: TextIO) -> int:
    if not a.file.exists():
        raise UsageError(f"no such file: {a.file}")
    if a.kind == "code":
        code = codes.read_code(a.file)
        rep = codes.verify_covering(code, threads=a.threads, max_uncovered=a.max_violations)
        if rep.passed:
            out.write(f"PASS covering code q={code.q} [{code.m}*{code.s}] R={code.R} size={code.size}: "
                      f"all {rep.checked} words covered\n")
            return EXIT_OK
        out.write(f"FAIL covering code: {rep.uncovered_count} of {rep.checked} words uncovered\n")
        for w in rep.uncovered:
            out.write(f"  uncovered {' '.join(map(str, w))}\n")
        return EXIT_FAIL
    arr = instantiate_wildcards(read_array(a.file), a.fill)
    check = verify_ca if a.kind == "ca" else verify_oca
    rep = check(arr, max_violations=a.max_violations, threads=a.threads)
    what = (f"CA({arr.N};{arr.t},{arr.n},{arr.v})" if a.kind == "ca"
            else f"OCA({arr.N};{arr.t},{arr.m},{arr.s},{arr.v})")
    if rep.passed:
        exact = " (exact)" if rep.exact else ""
        out.write(f"PASS {what}: all {rep.checked} anti-ideals covered{exact}\n")
        return EXIT_OK
    out.write(f"FAIL {what}: {rep.failing_anti_ideals} of {rep.checked} anti-ideals not covered\n")
    for viol in rep.violations:
        cols = "{" + ",".join(map(str, viol.columns)) + "}"
        out.write(f"  anti-ideal {viol.anti_ideal.counts} columns {cols}: "
                  f"tuple {viol.tuple_} seen {viol.count} times\n")
    return EXIT_FAIL


def _cmd_bound(a: argparse.Namespace, out: TextIO) -> int:
    if a.emit_table:
        out.write(bounds.format_table(bounds.emit_table(a.emit_table), a.format))
        return EXIT_OK
    opts = dict(depth=a.depth, constructive_only=not a.nonconstructive)
    if a.kind == "ocan":
        missing = [n for n in ("t", "m", "s", "v") if getattr(a, n) is None]
        if missing:
            raise UsageError("bound --kind ocan needs " + ", ".join(f"--{n}" for n in missing))
        rec = bounds.best_ocan_upper(a.t, a.m, a.s, a.v, **opts)
    else:
        missing = [n for n in ("q", "m", "s", "R") if getattr(a, n) is None]
        if missing:
            raise UsageError("bound --kind k needs " + ", ".join(f"--{n}" for n in missing))
        rec = bounds.best_k_upper(a.q, a.m, a.s, a.R, **opts)
    if a.format == "records":
        out.write(json.dumps(rec.as_dict()) + "\n")
    else:
        out.write(f"{rec.label} <= {rec.value}  via {rec.path()}\n")
        if a.trace:
            out.write("\n".join(rec.trace_lines()) + "\n")
    return EXIT_OK


def _cmd_oracle(a: argparse.Namespace, out: TextIO) -> int:
    if a.oracle_command == "exact-k":
        res = oracle.exact_min_covering(a.q, a.m, a.s, a.R, a.cap)
        label = f"K_{a.q}({a.m},{a.s},{a.R})"
        if res.value is None:
            out.write(f"{label} >= {res.lower_bound} (no code of size <= {a.cap}; {res.nodes} nodes)\n")
        else:
            out.write(f"{label} = {res.value} ({res.nodes} nodes)\n")
            _emit(codes.write_code(res.witness), a.output, out)
        return EXIT_OK
    code = oracle.greedy_covering(a.q, a.m, a.s, a.R, seed=a.seed)
    _emit(codes.write_code(code), a.output, out)
    return EXIT_OK


def _cmd_sphere(a: argparse.Namespace, out: TextIO) -> int:
    prof = sphere_profile(a.q, a.m, a.s, a.R)
    out.write(f"V_{a.q}([{a.m}*{a.s}], R={a.R}) = {prof.volume}\n")
    for (i, j), count in sorted(prof.omega.items()):
        if count:
            out.write(f"  ideals of size {i} with {j} maximal elements: {count}\n")
    return EXIT_OK


COMMANDS = {"construct": _cmd_construct, "verify": _cmd_verify, "bound": _cmd_bound,
            "oracle": _cmd_oracle, "sphere": _cmd_sphere}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except oc.ConstructionError as exc:
        print(f"nrtoca: verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, FormatError, ValueError, ArithmeticError) as exc:
        print(f"nrtoca: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


run = main


if __name__ == "__main__":
    sys.exit(main())
