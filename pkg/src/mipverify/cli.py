"""Command-line entry point.

Subcommands::

    family      build the family at (n, m, k) and verify the structural facts
                (optionally the cross-variant isomorphisms)
    witness     build F2[G], F2[H] and certify the unit-witness isomorphism
    invariants  compute the algebra-determined invariant report(s)
    export      write multiplication tables, presentations and a GAP
                cross-check script

Exit codes: 0 all checks passed, 1 verification failure, 2 usage error,
3 I/O error.  Reports are canonical JSON on stdout (or ``--output``); equal
configurations produce byte-identical reports.  Timing goes to stderr only.
The environment variables MIPVERIFY_GUARD and MIPVERIFY_ORACLE_BOUND
override the built-in guard and oracle bound defaults.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from typing import Optional, Sequence

from .ambient import DEFAULT_GUARD, GuardExceeded
from .algebra import GroupAlgebra, is_unit, unit_order
from .family import build_family, compare_variants, verify_structure
from .invariants import invariant_report, reports_invariant_equal
from .isomorphism import DEFAULT_ORACLE_BOUND
from .report import canonical_json, certificate_as_dict, envelope
from .tables import semidirect_c9c9_table, wreath_cyclic_table
from .witness import (DEFAULT_SAMPLE_SIZE, build_beta, build_beta_general,
                      build_beta_k3, verify_witness)
from .export import write_exports

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

ODD_BASES = ("heisenberg", "wreath", "c9c9")
ZETA_CHOICES = ("one", "central-element", "class-sum")


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw, 0)
    except ValueError as exc:
        raise SystemExit(f"invalid {name}={raw!r}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    guard_default = _env_int("MIPVERIFY_GUARD", DEFAULT_GUARD)
    bound_default = _env_int("MIPVERIFY_ORACLE_BOUND", DEFAULT_ORACLE_BOUND)

    top = argparse.ArgumentParser(
        prog="mipverify",
        description="Verification toolkit for a pair of non-isomorphic "
                    "2-groups with isomorphic modular group algebras.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, odd: bool = False) -> None:
        p.add_argument("--n", type=int, required=True,
                       help="exponent parameter n")
        p.add_argument("--m", type=int, required=True,
                       help="exponent parameter m")
        p.add_argument("--k", type=int, required=True,
                       help="base-group parameter k")
        p.add_argument("--guard", type=int, default=guard_default,
                       help="ambient size guard (elements)")
        p.add_argument("--output", default=None,
                       help="write the JSON report here instead of stdout")

    fam = sub.add_parser("family", help="structural verification")
    common(fam)
    fam.add_argument("--variant", default="dihedral",
                     choices=("dihedral", "semidihedral", "quaternion"))
    fam.add_argument("--variants", action="store_true",
                     help="additionally cross-check the three ambient kinds")
    fam.add_argument("--oracle-bound", type=int, default=bound_default)

    wit = sub.add_parser("witness", help="unit-witness certification")
    common(wit)
    wit.add_argument("--variant", default="dihedral",
                     choices=("dihedral", "semidihedral", "quaternion"))
    wit.add_argument("--beta", default="standard",
                     choices=("standard", "k3", "general"),
                     help="witness construction")
    wit.add_argument("--zeta", default="central-element", choices=ZETA_CHOICES,
                     help="central unit for --beta general")
    wit.add_argument("--seed", type=int, default=0)
    wit.add_argument("--sample-size", type=int, default=DEFAULT_SAMPLE_SIZE)
    wit.add_argument("--exhaustive", action="store_true",
                     help="check multiplicativity on all |G|^2 pairs")
    wit.add_argument("--no-matrix", action="store_true",
                     help="omit the basis-image matrix from the report")

    inv = sub.add_parser("invariants", help="algebra-determined invariants")
    common(inv)
    inv.add_argument("--p", type=int, default=2, help="prime (2 or odd)")
    inv.add_argument("--variant", default=None,
                     help="2-case kind or odd base: dihedral, semidihedral, "
                          "quaternion, heisenberg, wreath, c9c9")
    inv.add_argument("--pair", action="store_true",
                     help="2-case only: report both G and H and compare")

    exp = sub.add_parser("export", help="write cross-check files")
    common(exp)
    exp.add_argument("--variant", default="dihedral",
                     choices=("dihedral", "semidihedral", "quaternion"))
    exp.add_argument("--outdir", required=True)

    return top


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def cmd_family(args: argparse.Namespace) -> int:
    config = {"n": args.n, "m": args.m, "k": args.k, "variant": args.variant,
              "variants": bool(args.variants), "guard": args.guard,
              "oracle_bound": args.oracle_bound}
    inst = build_family(2, args.variant, args.n, args.m, args.k,
                        guard=args.guard)
    structure = verify_structure(inst)
    payload = {"structure": structure.as_dict()}
    ok = structure.ok
    if args.variants:
        variants = compare_variants(args.n, args.m, args.k, guard=args.guard,
                                    bound=args.oracle_bound)
        payload["variants"] = variants.as_dict()
        ok = ok and variants.ok
    _emit(canonical_json(envelope("family", config, payload)), args.output)
    return EXIT_OK if ok else EXIT_VERIFICATION


def _make_zeta(FH: GroupAlgebra, inst, kind: str, seed: int, m: int):
    if kind == "one":
        return FH.one()
    if kind == "central-element":
        c = inst.named["c"]
        return FH.embed(FH.group.power(c, 2 ** (inst.params[2] - 1)))
    sums = [s for s in FH.class_sums() if s.augmentation() == 0]
    rng = random.Random(seed)
    for _ in range(64):
        nu = FH.zero()
        for s in sums:
            if rng.randrange(2):
                nu = nu + s
        zeta = FH.one() + nu
        if zeta.is_central() and is_unit(zeta) and unit_order(zeta) < 2 ** m:
            return zeta
    raise ValueError("no suitable class-sum zeta found for this seed")


def cmd_witness(args: argparse.Namespace) -> int:
    config = {"n": args.n, "m": args.m, "k": args.k, "variant": args.variant,
              "beta": args.beta, "zeta": args.zeta if args.beta == "general" else None,
              "seed": args.seed, "sample_size": args.sample_size,
              "exhaustive": bool(args.exhaustive), "guard": args.guard}
    inst = build_family(2, args.variant, args.n, args.m, args.k,
                        guard=args.guard)
    FG = GroupAlgebra(inst.G)
    FH = GroupAlgebra(inst.H)
    if args.beta == "standard":
        beta = build_beta(FH, inst.x, inst.z)
    elif args.beta == "k3":
        d = inst.named["d"]
        beta = build_beta_k3(FH, inst.x, inst.z,
                             inst.ambient.power(d, 2), args.k)
    else:
        zeta = _make_zeta(FH, inst, args.zeta, args.seed, args.m)
        beta = build_beta_general(FH, zeta, inst.x, inst.z, args.m)
    cert = verify_witness(FG, FH, beta, (args.n, args.m, args.k),
                          seed=args.seed, sample_size=args.sample_size,
                          exhaustive=args.exhaustive)
    payload = {"certificate": certificate_as_dict(
        cert, include_matrix=not args.no_matrix)}
    _emit(canonical_json(envelope("witness", config, payload)), args.output)
    return EXIT_OK if cert.valid else EXIT_VERIFICATION


def _odd_instance(p: int, base: str, n: int, m: int, k: int, guard: int):
    if base == "heisenberg":
        return build_family(p, "heisenberg", n, m, k, guard=guard)
    if base == "wreath":
        table, gens = wreath_cyclic_table(p)
        return build_family(p, "table", n, m, k, guard=guard, table=table,
                            table_generators=gens)
    if base == "c9c9":
        if p != 3:
            raise ValueError("the c9c9 base is specific to p = 3")
        table, gens = semidirect_c9c9_table()
        return build_family(p, "table", n, m, k, guard=guard, table=table,
                            table_generators=gens)
    raise ValueError(f"unknown odd base {base!r}; expected one of {ODD_BASES}")


def cmd_invariants(args: argparse.Namespace) -> int:
    p = args.p
    variant = args.variant
    config = {"p": p, "n": args.n, "m": args.m, "k": args.k,
              "variant": variant, "pair": bool(args.pair),
              "guard": args.guard}
    if p == 2:
        variant = variant or "dihedral"
        config["variant"] = variant
        inst = build_family(2, variant, args.n, args.m, args.k,
                            guard=args.guard)
        reports = [invariant_report(inst.G, GroupAlgebra(inst.G), "G")]
        payload: dict = {}
        if args.pair:
            reports.append(invariant_report(inst.H, GroupAlgebra(inst.H), "H"))
            payload["invariant_equal"] = reports_invariant_equal(*reports)
        payload["reports"] = [r.as_dict() for r in reports]
        _emit(canonical_json(envelope("invariants", config, payload)),
              args.output)
        if args.pair and not payload["invariant_equal"]:
            return EXIT_VERIFICATION
        return EXIT_OK
    if args.pair:
        raise ValueError("--pair applies to the 2-case only")
    variant = variant or "heisenberg"
    config["variant"] = variant
    inst = _odd_instance(p, variant, args.n, args.m, args.k, args.guard)
    rep = invariant_report(inst.G, GroupAlgebra(inst.G), variant)
    payload = {"reports": [rep.as_dict()]}
    _emit(canonical_json(envelope("invariants", config, payload)), args.output)
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    inst = build_family(2, args.variant, args.n, args.m, args.k,
                        guard=args.guard)
    written = write_exports(inst, args.outdir)
    config = {"n": args.n, "m": args.m, "k": args.k, "variant": args.variant,
              "outdir": args.outdir, "guard": args.guard}
    payload = {"files": written}
    _emit(canonical_json(envelope("export", config, payload)), args.output)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"family": cmd_family, "witness": cmd_witness,
                "invariants": cmd_invariants, "export": cmd_export}
    start = time.monotonic()
    try:
        code = handlers[args.command](args)
    except (ValueError, GuardExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    finally:
        elapsed = time.monotonic() - start
        print(f"elapsed_seconds={elapsed:.3f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
