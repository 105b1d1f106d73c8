"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 for unusable input (bad manifest, bad arguments, non-String classes where
String ones are required).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .errors import CharnumError
from .graded import DEFAULT_CAP, format_fraction, partition_str

ENV_CAP = "CHARNUM_CAP"


def _cap_from_env() -> int:
    raw = os.environ.get(ENV_CAP)
    if raw is None or raw == "":
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise CharnumError(f"{ENV_CAP} must be a positive integer, got {raw!r}") from None
    if cap < 1:
        raise CharnumError(f"{ENV_CAP} must be a positive integer, got {raw!r}")
    return cap


def _load_numbers(name: str):
    from .builtin import resolve_manifold
    from .manifolds import as_numbers

    return as_numbers(resolve_manifold(name))


# -- verbs ------------------------------------------------------------------------


def cmd_verify(args, out) -> int:
    from . import verify

    names = list(verify.SUITES) if args.all or not args.suite else args.suite
    unknown = [n for n in names if n not in verify.SUITES]
    if unknown:
        raise CharnumError(f"unknown suite(s) {', '.join(unknown)}; available: {', '.join(verify.SUITES)}")
    checks = verify.run(names)
    for c in checks:
        print(c.line(), file=out)
    failed = sum(not c.ok for c in checks)
    print(f"{len(checks) - failed} passed, {failed} failed", file=out)
    return 1 if failed else 0


def cmd_eval(args, out) -> int:
    from .qforms import witten_direct, witten_modular
    from .twist import parse_twist, twist_character, twisted_ahat, twisted_sig

    nums = _load_numbers(args.manifold)
    if args.genus == "witten":
        if args.twist not in (None, "", "1"):
            raise CharnumError("the Witten genus takes no twist")
        series = witten_direct(nums, args.order) if args.direct else witten_modular(nums, args.order)
        for n, c in enumerate(series.coeffs):
            print(f"q^{n}\t{format_fraction(c)}", file=out)
        return 0
    i, j, k = parse_twist(args.twist or "")
    ch = twist_character(i, j, k, nums.dim, nums.dim // 4)
    value = twisted_ahat(nums, ch) if args.genus == "ahat" else twisted_sig(nums, ch)
    print(format_fraction(value), file=out)
    return 0


def cmd_bh(args, out) -> int:
    from .bh import f4_spin9_roots, fiber_pontryagin, m4_construction, spin_images
    from .manifolds import numbers, signature

    if args.dump_fiber_class:
        cap = _cap_from_env()
        poly = fiber_pontryagin(f4_spin9_roots(), cap)
        for w in range(cap + 1):
            print(f"{w}\t{poly.homogeneous(w)}", file=out)
        return 0
    c = m4_construction()
    for k in range(1, 5):
        print(f"image p{k}\t{c.p_images[k]}", file=out)
    for k, img in spin_images(c).items():
        print(f"image q{k}\t{img}", file=out)
    for k in range(1, c.model.dim // 4 + 1):
        print(f"p{k}(M4)\t{c.model.p(k)}", file=out)
    nums = numbers(c.model)
    for part, v in nums.numbers.items():
        print(f"p[{partition_str(part)}]\t{format_fraction(v)}", file=out)
    print(f"Sig\t{format_fraction(signature(nums))}", file=out)
    return 0


def cmd_divisibility(args, out) -> int:
    from .lattice import THEOREMS, divisibility_theorems

    checks = divisibility_theorems([args.theorem] if args.theorem else THEOREMS)
    for t in checks:
        line = f"{'PASS' if t.ok else 'FAIL'} {t.theorem} {t.name}: {t.detail}"
        if not t.ok:
            line += f"; witness x = {t.witness}"
        print(line, file=out)
    return 0 if all(t.ok for t in checks) else 1


SWEEP_COLUMNS = ("i", "j", "k", "rank", "ahat", "ahat_mod", "sig", "sig_mod")


def cmd_sweep(args, out) -> int:
    from .lattice import conjecture_sweep

    nums = _load_numbers(args.manifold) if args.manifold else None
    table = conjecture_sweep(args.max, args.mod, nums)

    def cells(r):
        mod = lambda v: "" if v is None else str(v)  # noqa: E731
        return (str(r.i), str(r.j), str(r.k), format_fraction(r.rank), format_fraction(r.ahat),
                mod(r.ahat_mod), format_fraction(r.sig), mod(r.sig_mod))

    if args.format == "json":
        rows = [dict(zip(SWEEP_COLUMNS, cells(r))) for r in table.rows]
        json.dump({"max": args.max, "modulus": args.mod, "all_pass": table.all_pass, "rows": rows},
                  out, indent=1)
        out.write("\n")
    else:
        print("\t".join(SWEEP_COLUMNS), file=out)
        for r in table.rows:
            print("\t".join(cells(r)), file=out)
        passed = sum(r.passes for r in table.rows)
        print(f"# {passed}/{len(table.rows)} rows integral with both residues 0 mod {args.mod}", file=out)
    return 0 if table.all_pass else 1


def cmd_decompose(args, out) -> int:
    from .lattice import decompose, kappa

    nums = _load_numbers(args.manifold)
    d = decompose(nums)
    print("x\t" + "\t".join(format_fraction(c) for c in d.coords), file=out)
    print("kappa\t" + "\t".join(format_fraction(c) for c in kappa(nums)), file=out)
    print("in lattice" if d.in_lattice else "not in the integral lattice", file=out)
    return 0


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="charnum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("verify", help="run reference check suites")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true", help="run every suite (default)")
    g.add_argument("--suite", action="append", help="suite name; may be repeated")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate a genus on a manifold")
    p.add_argument("--manifold", required=True, help="built-in name or manifest path")
    p.add_argument("--genus", required=True, choices=("ahat", "sig", "witten"))
    p.add_argument("--twist", default="", help='twist such as "T^2*L*S^3"')
    p.add_argument("--order", type=int, default=5, help="q-truncation for the Witten genus")
    p.add_argument("--direct", action="store_true",
                   help="Witten genus from the twisted A-hat genera instead of the modular formula")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bh", help="Borel-Hirzebruch fiber class and the M4 construction")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--dump-fiber-class", action="store_true")
    g.add_argument("--dump-m4", action="store_true")
    p.set_defaults(func=cmd_bh)

    p = sub.add_parser("divisibility", help="gcd/valuation checks over the String lattice")
    p.add_argument("--theorem", choices=("sig32", "modsig", "wedge2", "compound", "1.2", "1.4", "1.5"))
    p.set_defaults(func=cmd_divisibility)

    p = sub.add_parser("sweep", help="twisted genera of M1 for T^i L^j S^k")
    p.add_argument("--max", type=int, default=5, help="bound on i + j + k")
    p.add_argument("--mod", type=int, default=24, help="modulus for the residues")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--manifold", help="sweep another 24-dimensional class instead of M1")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("decompose", help="coordinates of a String class in the basis M1..M4")
    p.add_argument("--manifold", required=True, help="built-in name or manifest path")
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except CharnumError as exc:
        print(f"charnum: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
