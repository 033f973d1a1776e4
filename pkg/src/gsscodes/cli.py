"""``gss`` command-line front end.

Exit codes: 0 success, 1 check or decoding failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import codes, crypto, gss, reproduce, rs
from .blocks import BlockCode, q_ary_image
from .codes import subfield_subcode
from .fields import FieldError, FieldTower
from .formats import CodeFile, FormatError, load_code, parse_int_list
from .rng import make_rng
from .rs import DecodingFailure, GrsSpec


class UsageError(Exception):
    pass


# -- helpers -------------------------------------------------------------------


def _prime_power(x: int) -> tuple[int, int]:
    for p in range(2, x + 1):
        if x % p == 0:
            e, y = 0, x
            while y % p == 0:
                y //= p
                e += 1
            if y != 1:
                raise UsageError(f"{x} is not a prime power")
            return p, e
    raise UsageError(f"{x} is not a prime power")


def tower_from_args(args) -> FieldTower:
    if getattr(args, "tower", None):
        return FieldTower.from_text(args.tower)
    if not args.q:
        raise UsageError("give --q (order of the big field) or --tower")
    p, n = _prime_power(args.q)
    base = args.base or p
    pb, e = _prime_power(base)
    if pb != p or n % e:
        raise UsageError(f"GF({base}) is not a subfield of GF({args.q})")
    mqm = parse_int_list(args.modulus) if getattr(args, "modulus", None) else None
    basis = parse_int_list(args.basis) if getattr(args, "basis", None) else None
    return FieldTower(p, e, n // e, None, mqm, basis)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_code(cf: CodeFile, args) -> None:
    as_json = args.json or (args.out or "").endswith(".json")
    _emit(cf.dumps(as_json), args.out)


def _parent(args) -> tuple[CodeFile, FieldTower]:
    cf = load_code(args.parent)
    if cf.level != "qm" or cf.block is not None:
        raise UsageError("parent must be a code over the big field")
    return cf, cf.tower


def _parent_spec(args) -> tuple[GrsSpec, FieldTower]:
    cf, tower = _parent(args)
    if cf.grs is None:
        raise UsageError("parent file has no GRS description; build it with 'construct rs' or 'construct grs'")
    return cf.grs, tower


def _family(tower: FieldTower, args) -> gss.SubspaceFamily | None:
    if args.W:
        return gss.SubspaceFamily.from_text(tower, Path(args.W).read_text())
    if args.u:
        return gss.family_from_positions(tower, parse_int_list(args.u))
    return None


def _perm(args, n: int) -> np.ndarray | None:
    if not getattr(args, "perm", None):
        return None
    perm = np.array(parse_int_list(args.perm), dtype=np.int64) - 1
    if sorted(perm.tolist()) != list(range(n)):
        raise UsageError("--perm must be a permutation of 1..n")
    return perm


# -- commands ------------------------------------------------------------------


def cmd_field(args) -> int:
    T = tower_from_args(args)
    info = {
        "tower": T.to_text(),
        "q": T.q,
        "m": T.m,
        "order": T.top.order,
        "generator": T.top.generator,
        "basis": list(T.basis),
    }
    if args.element is not None:
        x = args.element
        info["element"] = {
            "value": x,
            "coordinates": T.phi(x).tolist(),
            "trace": int(T.trace(x)),
            "multiplication_matrix": T.mult_matrix(x).tolist(),
        }
    if args.json:
        print(json.dumps(info, indent=1))
    else:
        for k, v in info.items():
            print(f"{k}: {v}")
    return 0


def build_construct(args) -> CodeFile:
    """Library calls behind ``gss construct``; shared with tests."""
    kind = args.kind
    if kind in ("rs", "grs"):
        T = tower_from_args(args)
        if kind == "rs":
            if args.extended:
                spec = GrsSpec.extended(T, args.k)
            else:
                if args.n is None:
                    raise UsageError("construct rs needs --n (or --extended)")
                spec = GrsSpec.reed_solomon(T, args.n, args.k)
        else:
            if not args.support:
                raise UsageError("construct grs needs --support")
            support = parse_int_list(args.support)
            mult = parse_int_list(args.multipliers) if args.multipliers else [1] * len(support)
            spec = GrsSpec(T, support, mult, args.k)
        return CodeFile.from_code(spec.code(), T, grs=spec)
    if not args.parent:
        raise UsageError(f"construct {kind} needs --parent")
    cf, T = _parent(args)
    C = cf.code()
    if kind == "image":
        return CodeFile.from_code(q_ary_image(C, T), T)
    if kind == "sfsc":
        return CodeFile.from_code(subfield_subcode(C, T), T)
    if kind == "gss":
        if args.u:
            return CodeFile.from_code(gss.gss_algorithm1(C, parse_int_list(args.u), T), T)
        if args.y:
            return CodeFile.from_code(gss.gss_algorithm3(C, _perm(args, C.n), parse_int_list(args.y), T), T)
        raise UsageError("construct gss needs --u or --y")
    if kind == "ssc":
        if not args.V:
            raise UsageError("construct ssc needs --V")
        V = T.phi(np.array(parse_int_list(args.V), dtype=np.int64))
        return CodeFile.from_code(gss.subspace_subcode(C, V, T), T)
    if kind == "gssw":
        if not args.W:
            raise UsageError("construct gssw needs --W")
        W = gss.SubspaceFamily.from_text(T, Path(args.W).read_text())
        B = gss.gss_w(C, W)
        perm = _perm(args, C.n)
        return CodeFile.from_code(B if perm is None else B.permute_blocks(perm), T)
    raise UsageError(f"unknown construction {kind}")


def cmd_construct(args) -> int:
    _emit_code(build_construct(args), args)
    return 0


def cmd_analyze(args) -> int:
    cf = load_code(args.code)
    code = cf.code()
    block = cf.block or 1
    rep = codes.analyze_distance(
        code.field, code.G, cf.n, block, budget=args.distance_budget, time_limit=args.time_limit,
        rng=make_rng(args.seed),
    )
    info = {"n": cf.n, "q": code.field.order, "block": block}
    if isinstance(code, BlockCode):
        info["k_q"] = code.k_q
        info["pseudo_dimension"] = str(code.pseudo_dimension)
    else:
        info["k"] = code.k
    info["d"] = rep.label()
    info["d_exact"], info["d_lower"], info["d_upper"] = rep.exact, rep.lower, rep.upper
    info["distance_method"] = rep.method
    if args.json:
        print(json.dumps(info, indent=1))
    else:
        k = info.get("pseudo_dimension", info.get("k"))
        sep = ";" if isinstance(code, BlockCode) else ","
        print(f"[{cf.n}{sep}{k}{sep}{info['d']}] over GF({code.field.order})" + (f"^{block}" if block > 1 else ""))
        print(f"distance: {rep.method}")
    return 0


def cmd_decode(args) -> int:
    spec, T = _parent_spec(args)
    word = np.array(parse_int_list(args.word), dtype=np.int64)
    W = _family(T, args)
    if W is None:
        out, _ = rs.decode(spec, word)
    else:
        out = gss.gss_decode(spec, W, word, _perm(args, spec.n))
    print(" ".join(str(int(x)) for x in out))
    return 0


def cmd_crypto(args) -> int:
    action = args.action
    if action == "estimate":
        for name in ("n", "k", "d", "m", "r"):
            if getattr(args, name) is None:
                raise UsageError(f"crypto estimate needs --{name}")
        rep = crypto.CryptoParams(args.n, args.k, args.d, args.q or 2, args.m, args.r).report()
        if args.json:
            print(json.dumps(rep, indent=1))
        else:
            for k, v in rep.items():
                print(f"{k}: {v}")
        return 0
    if action == "keygen":
        if not args.parent or args.r is None:
            raise UsageError("crypto keygen needs --parent and --r")
        spec, _ = _parent_spec(args)
        pub, sec = crypto.keygen(spec, args.r, args.seed)
        _emit(json.dumps(crypto.keypair_to_dict(pub, sec)) + "\n", args.out)
        return 0
    if not args.key:
        raise UsageError(f"crypto {action} needs --key")
    pub, sec = crypto.keypair_from_dict(json.loads(Path(args.key).read_text()))
    if action == "encrypt":
        if args.message is None:
            raise UsageError("crypto encrypt needs --message")
        ct = crypto.encrypt(pub, parse_int_list(args.message), seed=args.seed, t=args.t)
        print(" ".join(str(int(x)) for x in ct))
        return 0
    if args.ciphertext is None:
        raise UsageError("crypto decrypt needs --ciphertext")
    msg = crypto.decrypt(sec, np.array(parse_int_list(args.ciphertext), dtype=np.int64), pub.k_q)
    print(" ".join(str(int(x)) for x in msg))
    return 0


def cmd_reproduce(args) -> int:
    report = reproduce.run(quick=args.quick, seed=args.seed, threads=args.threads)
    print(report.to_json() if args.json else report.to_text())
    return 0 if report.ok else 1


# -- parser ------------------------------------------------------------------------


def _field_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=int, help="order of the big field GF(q^m)")
    p.add_argument("--base", type=int, help="order of the small field GF(q) (default: the prime)")
    p.add_argument("--tower", help="explicit tower text p,e,m,modulus_q,modulus_qm,basis")
    p.add_argument("--modulus", help="modulus of GF(q^m) over GF(q), little-endian coefficients")
    p.add_argument("--basis", help="basis elements of GF(q^m) over GF(q)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gss", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="describe a field tower")
    _field_flags(p)
    p.add_argument("--element", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("construct", help="build a code file")
    p.add_argument("kind", choices=["rs", "grs", "image", "sfsc", "gss", "ssc", "gssw"])
    _field_flags(p)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--extended", action="store_true", help="support = every field element")
    p.add_argument("--support")
    p.add_argument("--multipliers")
    p.add_argument("--parent", help="code file over GF(q^m)")
    p.add_argument("--u", help="position tuple, entries 1..m")
    p.add_argument("--y", help="nonzero GF(q^m) elements, one per position")
    p.add_argument("--perm", help="block permutation, 1-based")
    p.add_argument("--V", help="GF(q^m) elements spanning the subspace")
    p.add_argument("--W", help="subspace family file")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="parameters of a code file")
    p.add_argument("code")
    p.add_argument("--distance-budget", type=int, default=codes.ENUMERATION_BUDGET)
    p.add_argument("--time-limit", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decode", help="decode a noisy word through a GRS parent")
    p.add_argument("--parent", required=True)
    p.add_argument("--u")
    p.add_argument("--W")
    p.add_argument("--perm")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("crypto", help="key generation, encryption and parameter estimates")
    p.add_argument("action", choices=["keygen", "encrypt", "decrypt", "estimate"])
    p.add_argument("--parent")
    p.add_argument("--key")
    p.add_argument("--r", type=int)
    p.add_argument("--message")
    p.add_argument("--ciphertext")
    p.add_argument("--t", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_crypto)

    p = sub.add_parser("reproduce-paper", help="check every published example and parameter claim")
    p.add_argument("--quick", action="store_true", help="skip the [32;22;7] distance search")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DecodingFailure as exc:
        print(f"decoding failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, FormatError, FieldError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"gss: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
