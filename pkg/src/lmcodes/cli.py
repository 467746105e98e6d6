"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 decode failure, 4 resource cap,
5 verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import aec, fileformat, oracle, uec, ued, vt
from .channel import Direction, ErrorVector, OutOfAlphabet, apply, make_rng, sample_error
from .core import Codebook, CodeParams, DecodeFailure, Mode, ResourceCapExceeded, Word, check_word

EXIT_USAGE = 2
EXIT_DECODE = 3
EXIT_CAP = 4
EXIT_VERIFY = 5


class UsageError(Exception):
    pass


def _counts(obj):
    """Counts go out as decimal strings so no consumer truncates them."""
    if isinstance(obj, dict):
        return {k: _counts(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_counts(v) for v in obj]
    if isinstance(obj, (int, Fraction)) and not isinstance(obj, bool):
        return str(obj)
    return obj


def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _params(args) -> CodeParams:
    try:
        return CodeParams(args.q, args.ell, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _word(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError as exc:
        raise UsageError(f"malformed word {text!r}") from exc


def _fmt(word: Sequence[int]) -> str:
    return " ".join(str(s) for s in word)


# construction ---------------------------------------------------------------

def _code_object(args, params: CodeParams):
    """Implicit code description selected by --mode and construction flags."""
    if args.mode == "aec":
        return aec.AecCode(params)
    if args.mode == "uec":
        kind = args.construction or "constant-sum"
        if kind == "constant-sum":
            j = uec.jstar(params) if args.j is None else args.j
            return uec.ConstantSumCode(params, j)
        if kind == "two-level":
            try:
                return uec.TwoLevelCode(params)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        return uec.TailCode(params)
    if args.mode == "vt":
        if args.coeffs:
            if args.a is None:
                raise UsageError("--coeffs needs --a")
            coeffs = _word(args.coeffs)
            try:
                return vt.LinearCode(params, coeffs, args.a)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        if args.a is not None and args.r is not None:
            raise UsageError("give at most one of --a and --r")
        if args.a is not None:
            return vt.PowerCodeSpec.from_constant(params, args.a)
        return vt.PowerCodeSpec(params, args.r or 0)
    if args.mode == "ued":
        a = ued.best_ca(params)[0] if args.a is None else args.a
        try:
            return ued.LayerUnionCode(params, a)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError(f"unknown mode {args.mode}")


def _materialize(code) -> Codebook:
    if isinstance(code, vt.PowerCodeSpec):
        return vt.enumerate_code(code.linear_code())
    if isinstance(code, vt.LinearCode):
        return vt.enumerate_code(code)
    return code.codebook()


def cmd_construct(args) -> int:
    params = _params(args)
    c = _materialize(_code_object(args, params))
    valid = c.is_valid() if not args.no_check else None
    verdict = {True: "valid", False: "INVALID", None: "unchecked"}[valid]
    summary = f"size {len(c)} {c.mode.value} {verdict}"
    if args.output:
        fileformat.write(c, args.output)
        _emit(args, summary, {"size": len(c), "mode": c.mode.value, "valid": valid, "file": args.output})
    else:
        sys.stdout.write(fileformat.dumps(c))
        print(summary, file=sys.stderr)
    return 0 if valid is not False else EXIT_VERIFY


# decoding ---------------------------------------------------------------------

def _decode_codebook(c: Codebook, y: Word) -> tuple[Word, ErrorVector]:
    p = c.params
    if c.mode is Mode.UED:
        if y in c:
            return y, ErrorVector((0,) * p.n)
        raise DecodeFailure(f"error detected: {y} is not a codeword")
    if c.mode is Mode.AEC:
        hits = [x for x in c if all(0 <= s - t <= p.ell for s, t in zip(y, x))]
        if len(hits) != 1:
            raise DecodeFailure(f"{y} matches {len(hits)} codewords")
        x = hits[0]
    else:
        x = uec.decode_uec(c, y)
    return x, _error_between(x, y)


def _error_between(x: Word, y: Word) -> ErrorVector:
    diff = [b - a for a, b in zip(x, y)]
    if all(d >= 0 for d in diff):
        return ErrorVector(tuple(diff), Direction.UP)
    return ErrorVector(tuple(-d for d in diff), Direction.DOWN)


def _decode_with(code, y: Word) -> tuple[Word, ErrorVector]:
    if isinstance(code, vt.PowerCodeSpec):
        return vt.decode_power(y, code)
    if isinstance(code, aec.AecCode):
        x = code.decode(y)
        return x, _error_between(x, y)
    if isinstance(code, (uec.ConstantSumCode, uec.TwoLevelCode, uec.TailCode)):
        x = code.decode(y)
        return x, _error_between(x, y)
    return _decode_codebook(_materialize(code), y)


def cmd_decode(args) -> int:
    y_raw = _word(args.received)
    if args.code:
        c = fileformat.read(args.code)
        params = c.params
        code = c
    else:
        if args.mode is None:
            raise UsageError("decode needs --code FILE or --mode with parameters")
        params = _params(args)
        code = _code_object(args, params)
        if isinstance(code, uec.TailCode):
            params = code.out_params
    try:
        y = check_word(y_raw, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(code, Codebook):
        x, e = _decode_codebook(code, y)
    else:
        x, e = _decode_with(code, y)
    text = f"decoded {_fmt(x)}\nerror {_fmt(e.magnitudes)} {e.direction.value}"
    _emit(args, text, {"decoded": list(x), "error": list(e.magnitudes), "direction": e.direction.value})
    return 0


# counting and tables -----------------------------------------------------------

def cmd_count(args) -> int:
    params = _params(args)
    table = vt.gamma_table(params)
    centre = vt.alpha(params) * vt.power_sum(params)
    if args.max:
        offsets, best = vt.gamma_max(params)
        text = f"{best} at offsets {' '.join(str(r) for r in offsets)}"
        _emit(args, text, {"max": _counts(best), "offsets": offsets, "exponents": [r + centre for r in offsets]})
    elif args.r is not None:
        g = vt.gamma(params, args.r)
        _emit(args, str(g), {"r": args.r, "exponent": centre + args.r, "count": _counts(g)})
    elif args.exponent is not None:
        g = table[args.exponent]
        _emit(args, str(g), {"exponent": args.exponent, "count": _counts(g)})
    else:
        rows = [f"{e} {c}" for e, c in enumerate(table.counts)]
        _emit(args, "\n".join(rows), {"centre": centre, "counts": _counts(table.counts)})
    return 0


def cmd_table(args) -> int:
    params = _params(args)
    if args.ued:
        counts = ued.pi_counts(params)
        sizes = [ued.ca_size(params, a) for a in range(params.ell * params.n + 1)]
        a_star, best = ued.best_ca(params)
        text = (
            f"P  {' '.join(map(str, counts))}\n"
            f"C  {' '.join(map(str, sizes))}\n"
            f"best a={a_star} size={best}"
        )
        _emit(args, text, {"layers": _counts(counts), "ca_sizes": _counts(sizes), "best": {"a": a_star, "size": _counts(best)}})
    elif args.constant_sum:
        counts = uec.constant_sum_counts(params)
        j = uec.jstar(params)
        text = f"{' '.join(map(str, counts))}\njstar={j} size={counts[j]}"
        _emit(args, text, {"counts": _counts(counts), "jstar": j})
    elif args.gamma_seq:
        seq = vt.gamma_sequence(params.q, params.ell, args.r or 0, args.gamma_seq)
        _emit(args, " ".join(map(str, seq)), {"r": args.r or 0, "sequence": _counts(seq)})
    else:
        raise UsageError("table needs one of --ued, --constant-sum, --gamma-seq N")
    return 0


def cmd_window(args) -> int:
    params = _params(args)
    w = vt.optimal_window(params)
    if w is None:
        _emit(args, "NotApplicable", {"window": None})
        return 0
    u, v = w
    target = params.b ** (params.n - 1)
    ok = all(vt.gamma(params, r) == target for r in range(u, v + 1))
    _emit(args, f"[{u}, {v}] size {target} {'verified' if ok else 'MISMATCH'}",
          {"window": [u, v], "size": _counts(target), "verified": ok})
    return 0 if ok else EXIT_VERIFY


def cmd_scan(args) -> int:
    params = _params(args)
    coeffs = _word(args.coeffs) if args.coeffs else None
    a_star, size = vt.best_constant_scan(params, coeffs)
    _emit(args, f"best size {size} at constant {a_star}", {"constant": a_star, "size": _counts(size)})
    return 0


# verification ------------------------------------------------------------------

def cmd_verify(args) -> int:
    c = fileformat.read(args.file)
    if args.mode:
        c = Codebook(c.params, c.words, args.mode)
    pairwise = c.is_valid()
    channel = ued.detects_all(c) if c.mode is Mode.UED else oracle.verify_correction(c)
    ok = pairwise and channel
    text = f"{c.mode.value} size {len(c)} pairwise={'pass' if pairwise else 'FAIL'} channel={'pass' if channel else 'FAIL'}"
    _emit(args, text, {"mode": c.mode.value, "size": len(c), "checks": [
        {"name": "pairwise", "pass": pairwise}, {"name": "channel", "pass": channel}]})
    return 0 if ok else EXIT_VERIFY


def cmd_oracle(args) -> int:
    params = _params(args)
    size, witness = oracle.max_code_exact(params, args.mode, args.cap)
    text = str(size)
    if args.witness:
        text += "\n" + "\n".join(_fmt(w) for w in witness)
    _emit(args, text, {"size": _counts(size), "witness": [list(w) for w in witness]})
    return 0


def cmd_report(args) -> int:
    params = _params(args)
    rep = oracle.bound_report(params, exact=not args.no_exact, cap=args.cap)
    ok = all(c["pass"] for c in rep["checks"])
    if args.format == "json":
        rep = dict(rep, bounds=_counts(rep["bounds"]), sizes=_counts(rep["sizes"]))
        print(json.dumps(rep, sort_keys=True))
    else:
        lines = [f"q={params.q} l={params.ell} n={params.n}"]
        lines += [f"  {k}: {v}" for k, v in rep["bounds"].items()]
        lines += [f"  {k}: {v}" for k, v in rep["sizes"].items()]
        lines += [f"  [{'pass' if c['pass'] else 'FAIL'}] {c['name']}" for c in rep["checks"]]
        print("\n".join(lines))
    return 0 if ok else EXIT_VERIFY


def cmd_simulate(args) -> int:
    params = _params(args)
    if args.mode == "ued":
        raise UsageError("simulate supports aec, uec and vt codes")
    code = _code_object(args, params)
    c = _materialize(code)
    if len(c) == 0:
        raise UsageError("the selected code is empty")
    p = c.params
    if args.mode == "aec" and args.direction != "up":
        raise UsageError("aec codes only correct upward errors; use --direction up")
    rng = make_rng(args.seed)
    recovered = 0
    for _ in range(args.trials):
        x = c.words[int(rng.integers(len(c)))]
        direction = args.direction
        if direction == "random":
            direction = "up" if rng.integers(2) == 0 else "down"
        e = sample_error(p, direction, seed=rng)
        # clip to the headroom so the pattern is one the channel can produce for x
        if direction == "up":
            mags = tuple(min(m, p.q - 1 - s) for m, s in zip(e.magnitudes, x))
        else:
            mags = tuple(min(m, s) for m, s in zip(e.magnitudes, x))
        y = apply(x, ErrorVector(mags, direction), p)
        try:
            got = _decode_with(code, y)[0]
        except DecodeFailure:
            got = None
        recovered += got == x
    text = f"trials {args.trials} recovered {recovered} failures {args.trials - recovered} seed {args.seed}"
    _emit(args, text, {"trials": args.trials, "recovered": recovered,
                       "failures": args.trials - recovered, "seed": args.seed, "size": len(c)})
    return 0 if recovered == args.trials else EXIT_VERIFY


# parser --------------------------------------------------------------------------

def _add_params(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--q", type=int, required=required)
    p.add_argument("--ell", "--l", type=int, required=required, dest="ell")
    p.add_argument("--n", type=int, required=required)


def _add_code_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--construction", choices=["constant-sum", "two-level", "tail"])
    p.add_argument("--j", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--coeffs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lmcodes", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a codebook and write it out")
    p.add_argument("--mode", choices=["aec", "uec", "ued", "vt"], required=True)
    _add_params(p)
    _add_code_flags(p)
    p.add_argument("-o", "--output")
    p.add_argument("--no-check", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("decode", help="decode one received word")
    p.add_argument("--code", help="codebook file")
    p.add_argument("--mode", choices=["aec", "uec", "ued", "vt"])
    _add_params(p, required=False)
    _add_code_flags(p)
    p.add_argument("--received", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("count", help="coefficients of the power generating function")
    _add_params(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--max", action="store_true")
    g.add_argument("--r", type=int)
    g.add_argument("--exponent", type=int)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="layer and sequence tables")
    _add_params(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--ued", action="store_true")
    g.add_argument("--constant-sum", action="store_true")
    g.add_argument("--gamma-seq", type=int, metavar="NMAX")
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("window", help="provably optimal offsets for the power code")
    _add_params(p)
    p.set_defaults(func=cmd_window)

    p = sub.add_parser("scan", help="best constant for fixed coefficients")
    _add_params(p)
    p.add_argument("--coeffs")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="check a codebook file")
    p.add_argument("file")
    p.add_argument("--mode", choices=["aec", "uec", "ued"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact largest code by exhaustive search")
    p.add_argument("--mode", choices=["aec", "uec", "ued"], required=True)
    _add_params(p)
    p.add_argument("--cap", type=int, help="vertex cap (default $LMCODES_ORACLE_CAP or 20000)")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("report", help="bounds, construction sizes and exact values")
    _add_params(p)
    p.add_argument("--cap", type=int)
    p.add_argument("--no-exact", action="store_true")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("simulate", help="encode, corrupt and decode random codewords")
    p.add_argument("--mode", choices=["aec", "uec", "vt"], required=True)
    _add_params(p)
    _add_code_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--direction", choices=["up", "down", "random"], default="random")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except DecodeFailure as exc:
        print(f"decode failure: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except ResourceCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OutOfAlphabet) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
