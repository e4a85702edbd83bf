"""Command-line surface: verify identities, print matrices, series, crystal data.

Exit codes: 0 verified/printed, 1 mathematical mismatch, 2 usage or input
errors.  Output is deterministic; anything slow reports progress on stderr.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import ExitStack

from . import identities, recursions
from .cartan import (builtin_cartan, canonical_type, factors_label,
                     lepowsky_factors, lepowsky_product, parse_families,
                     positive_root_families, render_families, specialise_families)
from .crystal import (CrystalGraph, PSI, builtin_crystal, check_perfect,
                      load_crystal, principal_exponents, render_crystal,
                      tensor, tensor_vertex_str, wt_in_roots)
from .energy import load_profile, solve_energy, specialise_energy
from .partitions import enumerate_coloured, iter_coloured, render_partition
from .series import render_coefficient


class UsageError(Exception):
    pass


def _resolve_crystal(args) -> CrystalGraph:
    if getattr(args, "crystal", None):
        return load_crystal(args.crystal)
    return builtin_crystal(getattr(args, "type", None) or "g2")


def _resolve_profile(args):
    if getattr(args, "profile", None):
        return load_profile(args.profile)
    name = getattr(args, "identity", None) or "g2"
    if name == "g2":
        return identities.g2_profile()
    if name == "primc":
        return identities.primc_profile()
    if name == "dousse-lovejoy":
        return identities.dousse_lovejoy_profile()
    if name == "rr1":
        return identities.gap2_profile()
    if name == "rr2":
        return identities.gap2_profile(min_part=2)
    raise UsageError(f"unknown identity {name!r}")


def cmd_verify(args, out) -> int:
    rows, mismatch = identities.verify_identity(args.identity, args.order)
    names = identities.REGISTRY[args.identity].route_names()
    sep = "\t" if args.format == "tsv" else "  "
    print(sep.join(["n"] + names + ["status"]), file=out)
    for n, values, agree in rows:
        cells = [str(n)] + [render_coefficient(v) for v in values]
        cells.append("ok" if agree else "MISMATCH")
        print(sep.join(cells), file=out)
    if mismatch is None:
        print(f"all degrees 0..{args.order} agree", file=out)
        return 0
    print(f"first mismatch at degree {mismatch}", file=out)
    return 1


def cmd_energy_matrix(args, out) -> int:
    crystal = _resolve_crystal(args)
    energy = solve_energy(crystal)
    tsv = args.format == "tsv"
    print(energy.render(tsv=tsv), end="", file=out)
    if args.specialise:
        exponents = principal_exponents(wt_in_roots(crystal, _zero_weight_anchor(crystal)))
        colour_names = None
        order = None
        if crystal.vertices == builtin_crystal("g2").vertices:
            colour_names = identities.G2_COLOUR_OF_VERTEX
            order = identities.G2_ORDER
        profile = specialise_energy(energy, exponents, args.dilation,
                                    colour_names, order=order)
        print(file=out)
        print(profile.render(tsv=tsv), end="", file=out)
    return 0


def _zero_weight_anchor(crystal: CrystalGraph):
    levels = {v: crystal.level(v) for v in crystal.vertices}
    candidates = [v for v in crystal.vertices
                  if not any(crystal.wt(v)) and levels[v] == min(levels.values())]
    if not candidates:
        raise UsageError("crystal has no zero-weight anchor vertex")
    return candidates[0]


def cmd_expand(args, out) -> int:
    weight = tuple(int(x) for x in args.weight.split(","))
    factors = lepowsky_factors(args.type, weight)
    series = lepowsky_product(args.type, weight, args.order)
    print(f"factors: {factors_label(factors)}", file=out)
    for line in series.lines():
        print(line, file=out)
    return 0


def cmd_enumerate(args, out) -> int:
    profile = _resolve_profile(args)
    if args.witnesses:
        for n in range(args.order + 1):
            for partition in iter_coloured(profile, n):
                print(render_partition(partition), file=out)
        return 0
    for n in range(args.order + 1):
        value = enumerate_coloured(profile, n, track_colours=args.colours)
        print(f"{n}\t{render_coefficient(value)}", file=out)
    return 0


def cmd_recursion_series(args, out) -> int:
    if args.dilated:
        series = recursions.dilated_series(args.order)
    else:
        series = recursions.total_series(args.order)
    for line in series.lines():
        print(line, file=out)
    return 0


def cmd_crystal_info(args, out) -> int:
    crystal = _resolve_crystal(args)
    print(f"vertices: {len(crystal.vertices)}", file=out)
    header = ["vertex", "level", "phi", "epsilon", "weight"]
    print("\t".join(header), file=out)
    for v in crystal.vertices:
        print("\t".join([
            tensor_vertex_str(v), str(crystal.level(v)), str(crystal.phi_wt(v)),
            str(crystal.epsilon_wt(v)), str(crystal.wt(v)),
        ]), file=out)
    square = tensor(crystal, crystal)
    comps = square.components(exclude=[0])
    print(f"tensor square: {len(square.vertices)} vertices, "
          f"connected: {square.is_connected()}", file=out)
    print(f"components without 0-arrows: {len(comps)} "
          f"(sizes {sorted(len(c) for c in comps)})", file=out)
    report = check_perfect(crystal, args.level)
    print(f"perfect at level {args.level}: checked conditions "
          f"{'pass' if report.checked_ok else 'FAIL'} "
          f"(min level {report.min_level})", file=out)
    for weight, vs in sorted(report.epsilon_witnesses.items()):
        print(f"  epsilon = {weight}: {', '.join(tensor_vertex_str(v) for v in vs)}", file=out)
    for weight, vs in sorted(report.phi_witnesses.items()):
        print(f"  phi = {weight}: {', '.join(tensor_vertex_str(v) for v in vs)}", file=out)
    for name in report.unchecked:
        print(f"  not machine-checked: {name}", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrcrystal",
        description="verify Rogers-Ramanujan-type partition identities from crystal data")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, order_default=20):
        p.add_argument("--order", type=int, default=order_default, metavar="N",
                       help="truncation order (default %(default)s)")
        p.add_argument("--format", choices=("text", "tsv"), default="text")
        p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    p = sub.add_parser("verify", help="run all routes of an identity and compare")
    p.add_argument("--identity", required=True, choices=sorted(identities.REGISTRY))
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("energy-matrix", help="print the solved energy table")
    p.add_argument("--type", default="g2", help="built-in crystal (a1 or g2)")
    p.add_argument("--crystal", metavar="FILE", help="crystal definition file")
    p.add_argument("--specialise", action="store_true",
                   help="also print the dilated difference profile")
    p.add_argument("--dilation", type=int, default=4, metavar="T",
                   help="dilation exponent for --specialise (default %(default)s)")
    common(p)
    p.set_defaults(func=cmd_energy_matrix)

    p = sub.add_parser("expand", help="Lepowsky product of a highest weight")
    p.add_argument("--type", required=True, help="affine type (a1 or g2)")
    p.add_argument("--weight", required=True, metavar="C0,C1,...",
                   help="fundamental-weight coefficients, e.g. 1,0,0")
    common(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("enumerate", help="count coloured partitions under a profile")
    p.add_argument("--identity", choices=sorted(identities.REGISTRY))
    p.add_argument("--profile", metavar="FILE", help="difference profile file")
    p.add_argument("--witnesses", action="store_true", help="list the partitions themselves")
    p.add_argument("--colours", action="store_true", help="track colour monomials")
    common(p, order_default=10)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("recursion-series", help="the recursion-system series")
    p.add_argument("--dilated", action="store_true", help="specialised q-series")
    common(p, order_default=6)
    p.set_defaults(func=cmd_recursion_series)

    p = sub.add_parser("crystal-info", help="vertex table, tensor square, perfectness")
    p.add_argument("--type", default="g2", help="built-in crystal (a1 or g2)")
    p.add_argument("--crystal", metavar="FILE", help="crystal definition file")
    p.add_argument("--level", type=int, default=1, help="level for the perfectness report")
    common(p)
    p.set_defaults(func=cmd_crystal_info)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "order", 0) < 0:
        print("error: --order must be >= 0", file=sys.stderr)
        return 2
    try:
        with ExitStack() as stack:
            out = sys.stdout
            if getattr(args, "out", None):
                out = stack.enter_context(open(args.out, "w", encoding="utf-8"))
            return args.func(args, out)
    except (OSError, ValueError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
