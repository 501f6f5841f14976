"""Command-line front end.

Exit codes: 0 valid / pass, 1 invalid structure / fail, 2 parse or usage
error, 3 a configured bound was exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import braces as br
from . import constructions as con
from . import enumeration as en
from . import groups as grp
from . import infinite as inf
from . import io
from . import ybe
from .errors import BraceError, ClosureBoundExceeded, OrderBoundExceeded, ParseError

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_BOUNDS = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def _group(name: str | None) -> grp.FiniteGroup:
    if name is None:
        raise UsageError("this construction needs --group")
    try:
        return grp.named_group(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _class_line(kind: str, rep: br.SeriesReport) -> str:
    if rep.class_value is None:
        adjective = {"right": "right nilpotent", "left": "left nilpotent", "strong": "strongly nilpotent", "soluble": "soluble"}[kind]
        return f"{kind} class: none (not {adjective})"
    return f"{kind} class: {rep.class_value}"


# --- verify --------------------------------------------------------------------


def brace_report(A: br.SkewBrace) -> list[str]:
    lines = [
        f"skew brace of order {A.order}",
        f"additive group abelian: {_yes(A.add.is_abelian)}",
        f"multiplicative group abelian: {_yes(A.mul.is_abelian)}",
        f"bi-skew: {_yes(br.is_bi_skew(A).verdict)}",
        f"γ-homomorphic: {_yes(br.is_gamma_homomorphic(A).verdict)}",
    ]
    lines += [_class_line(k, br.series(A, k)) for k in ("right", "left", "strong", "soluble")]
    lines.append(f"socle size: {len(br.socle(A))}")
    return lines


def solution_report(S: ybe.Solution) -> list[str]:
    lines = [
        f"solution of size {S.size}",
        f"involutive: {_yes(S.involutive)}",
        f"bi-skew criterion: {_yes(ybe.bi_skew_criterion(S))}",
        f"retract size: {ybe.retract(S)[0].size}",
    ]
    level = ybe.multipermutation_level(S)
    lines.append(f"multipermutation level: {level if level is not None else '>16'}")
    return lines


def block_report_lines(block: con.BraceBlock) -> list[str]:
    rep = block.report or con.validate_block(block)
    return [
        f"brace block of order {block.order} with {len(block.ops)} operations",
        f"labels: {', '.join(block.labels)}",
        f"pairs checked: {rep.pairs_checked}",
        f"bi-skew pairs (definition): {_yes(rep.by_definition)}",
        f"gamma-family conditions: {_yes(rep.by_conditions)}",
    ]


def cmd_verify(args) -> int:
    text = io.read_text(args.path)
    kind = io.detect_kind(text)
    if kind == "brace":
        lines = brace_report(io.parse_brace(text, args.path))
    elif kind == "solution":
        lines = solution_report(io.parse_solution(text, args.path))
    elif kind == "block":
        lines = block_report_lines(io.parse_block(text, args.path))
    else:
        raise ParseError("unrecognised file header", None, args.path)
    print("\n".join(lines))
    print("valid")
    return EXIT_OK


# --- construct -----------------------------------------------------------------


def _sign_action(G: grp.FiniteGroup, H: grp.FiniteGroup, action: str) -> list[tuple[int, ...]]:
    if action == "trivial":
        return [tuple(range(H.order))] * G.order
    if action == "inversion":
        chars = con.characters_c2(G)
        if len(chars) < 2:
            raise UsageError("the left group has no homomorphism onto C2")
        return con.power_action(G, chars[1], grp.inversion_map(H))
    raise UsageError(f"unknown action {action!r}")


def _base_brace(G: grp.FiniteGroup, kind: str) -> br.SkewBrace:
    if kind == "trivial":
        return con.trivial(G)
    if kind == "optrivial":
        return con.op_trivial(G)
    raise UsageError(f"unknown brace kind {kind!r}")


def _input_brace(args) -> br.SkewBrace:
    if args.brace:
        return io.read_brace(args.brace)
    if args.ring:
        m, x = _ints(args.ring)
        return con.ring_brace(m, x)
    raise UsageError("give --brace FILE or --ring m,x")


def _subgroup(A: grp.FiniteGroup, which: str) -> grp.Subgroup:
    if which == "whole":
        return grp.whole(A)
    if which == "center":
        return grp.center(A)
    if which == "derived":
        return grp.group_structure(A).derived
    if which.startswith("gen:"):
        return grp.subgroup_generated(A, _ints(which[4:]))
    raise UsageError(f"unknown subgroup {which!r}")


def build(args):
    """The brace or block requested by ``construct``."""
    name = args.name.lower()
    if name == "trivial":
        return con.trivial(_group(args.group))
    if name == "optrivial":
        return con.op_trivial(_group(args.group))
    if name == "semidirect":
        G, H = _group(args.left), _group(args.right)
        return con.semidirect(_base_brace(G, args.left_kind), con.trivial(H), _sign_action(G, H, args.action))
    if name == "ringblock":
        if args.mod is None:
            raise UsageError("ringblock needs --mod")
        xs = _ints(args.xs) if args.xs else list(range(args.mod))
        return con.ring_block(args.mod, xs)
    if name == "intermediate":
        if args.auts == "unitriangular":
            if args.mod is None:
                raise UsageError("unitriangular automorphisms need --mod")
            G = grp.abelian(args.mod, args.mod)
            M = con.unitriangular(args.mod)
        else:
            G = _group(args.group)
            M = con.perm_group([grp.inversion_map(G)], G.order)[1]
        return con.intermediate_block(G, M, con.invariant_homomorphisms(G, M))
    if name == "semidirectblock":
        G, H = _group(args.left), _group(args.right)
        M = con.perm_group([grp.inversion_map(H)], H.order)[1]
        return con.semidirect_block(G, H, M, con.homomorphisms_into_perms(G, M, H.order))
    if name == "innerblock":
        A = _group(args.group)
        B = _subgroup(A, args.subgroup)
        if args.homs == "identity":
            if not B.is_whole():
                raise UsageError("--homs identity needs --subgroup whole")
            homs = [list(range(A.order))]
        else:
            homs = con.inner_homomorphisms(A, B)
        return con.inner_block(A, B, homs[: args.limit] if args.limit else homs)
    if name == "iterate":
        ns = _ints(args.ns) if args.ns else [0, 1]
        return con.iterate_block(_input_brace(args), ns)
    if name == "psideform":
        A = _input_brace(args)
        return con.psi_deform(A, con.power_map(A.add, args.power))
    if name == "counterexamplea":
        return con.counterexample_a()
    if name == "counterexampleb":
        return con.counterexample_b()
    raise UsageError(f"unknown construction {args.name!r}")


def cmd_construct(args) -> int:
    obj = build(args)
    if isinstance(obj, con.BraceBlock):
        text = io.write_block(obj, f"construct {args.name}")
    else:
        text = io.write_brace(obj, f"construct {args.name}")
    if args.out:
        io.write_file(args.out, text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --- enumerate -----------------------------------------------------------------

FILTER_ALIASES = {
    "bi": "bi_skew",
    "bi_skew": "bi_skew",
    "biskew": "bi_skew",
    "gh": "gamma_homomorphic",
    "gamma": "gamma_homomorphic",
    "gamma_homomorphic": "gamma_homomorphic",
    "brace": "brace",
}


def _filters(values: Sequence[str] | None) -> frozenset[str]:
    out = set()
    for v in values or ():
        for f in v.split(","):
            f = f.strip().lower()
            if f not in FILTER_ALIASES:
                raise UsageError(f"unknown filter {f!r}")
            out.add(FILTER_ALIASES[f])
    return frozenset(out)


def manifest_lines(task: en.EnumerationTask, res: en.EnumerationResult) -> list[str]:
    target = f"order {task.order}" if task.order is not None else f"group of order {task.additive_group.order}"
    lines = [
        f"target: {target}",
        f"filters: {','.join(sorted(task.filters)) or 'none'}",
        f"up to isomorphism: {_yes(task.up_to_iso)}",
        f"count: {res.class_count if task.up_to_iso else res.total_count}",
        f"total (labelled): {res.total_count}",
        f"classes: {res.class_count}",
    ]
    for k, v in res.tallies.items():
        lines.append(f"labelled {k}: {v}")
    for k, v in res.class_tallies.items():
        lines.append(f"classes {k}: {v}")
    return lines


def cmd_enumerate(args) -> int:
    filters = _filters(args.filter)
    if args.group_file:
        G = io.read_brace(args.group_file).add
        task = en.EnumerationTask(additive_group=G, filters=filters, up_to_iso=not args.labelled, jobs=args.jobs)
    elif args.group:
        task = en.EnumerationTask(additive_group=_group(args.group), filters=filters, up_to_iso=not args.labelled, jobs=args.jobs)
    elif args.order is not None:
        task = en.EnumerationTask(order=args.order, filters=filters, up_to_iso=not args.labelled, jobs=args.jobs)
    else:
        raise UsageError("give --order, --group or --group-file")
    res = en.enumerate_braces(task)
    lines = manifest_lines(task, res)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        width = len(str(len(res.representatives)))
        for k, A in enumerate(res.representatives):
            io.write_file(out / f"brace_{k:0{width}d}.sbr", io.write_brace(A))
        io.write_file(out / "manifest.txt", "\n".join(lines) + "\n")
    print("\n".join(lines))
    return EXIT_OK


# --- ybe -----------------------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if out:
        io.write_file(out, text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)


def cmd_ybe(args) -> int:
    sub = args.sub
    if sub == "derive":
        A = io.read_brace(args.paths[0])
        if args.swap:
            A = br.swapped(A)
        if args.opposite:
            A = br.opposite(A)
        _emit(io.write_solution(ybe.solution_from_brace(A)), args.out)
        return EXIT_OK
    S = io.read_solution(args.paths[0])
    if sub == "check":
        print("\n".join(solution_report(S)))
        print("valid")
    elif sub == "invert":
        _emit(io.write_solution(ybe.inverse_solution(S)), args.out)
    elif sub == "retract":
        R, cls = ybe.retract(S)
        _emit(io.write_solution(R, "classes: " + " ".join(map(str, cls))), args.out)
        if args.out:
            print("classes: " + " ".join(map(str, cls)))
    elif sub == "level":
        level = ybe.multipermutation_level(S, args.cap)
        print(level if level is not None else f">{args.cap}")
    elif sub == "iso":
        if len(args.paths) != 2:
            raise UsageError("iso needs two solution files")
        f = ybe.find_solution_isomorphism(S, io.read_solution(args.paths[1]))
        print("none" if f is None else " ".join(map(str, f)))
    elif sub == "taumultiset":
        ms = ybe.tau_order_multiset(S)
        print(" ".join(f"{k}:{ms[k]}" for k in sorted(ms)))
    elif sub == "group":
        print(f"permutation group order: {ybe.permutation_group(S, args.bound).order}")
    return EXIT_OK


# --- sample --------------------------------------------------------------------

PROP_ALIASES = {
    "group": "group_axioms",
    "group_axioms": "group_axioms",
    "brace": "brace_equation",
    "brace_equation": "brace_equation",
    "antihom": "bi_skew_antihom",
    "biskew": "bi_skew_antihom",
    "bi_skew_antihom": "bi_skew_antihom",
    "gammahom": "gamma_hom",
    "gamma_hom": "gamma_hom",
    "dihedral": "dihedral_relations",
    "dihedral_relations": "dihedral_relations",
    "star": "star_formula",
    "star_formula": "star_formula",
    "class2": "right_class_le_2",
    "right_class_le_2": "right_class_le_2",
    "gamma": "gamma_formula",
    "gamma_formula": "gamma_formula",
}


def _props(text: str | None, family: str) -> tuple[str, ...]:
    if text is None or text.strip().lower() == "all":
        return inf.applicable_properties(family)
    out = []
    for p in text.split(","):
        p = p.strip().lower()
        if p == "all":
            out.extend(inf.applicable_properties(family))
        elif p in PROP_ALIASES:
            out.append(PROP_ALIASES[p])
        else:
            raise UsageError(f"unknown property {p!r}")
    return tuple(dict.fromkeys(out))


def cmd_sample(args) -> int:
    if args.family == "z":
        family = f"z_{args.variant}" if not args.variant.startswith("z_") else args.variant
        report = inf.window_verify(family, args.bound, _props(args.props, family))
    else:
        if args.x is None:
            raise UsageError("sample z2 needs --x")
        report = inf.window_verify("z2", args.bound, _props(args.props, "z2"), x=args.x)
    print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_INVALID


# --- entry point ---------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skewbrace", description="Finite skew braces, brace blocks and Yang-Baxter solutions.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="validate a .sbr, .ybe or .blk file and report its invariants")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", help="build a named brace or brace block")
    c.add_argument("name")
    c.add_argument("-o", "--out")
    c.add_argument("--group")
    c.add_argument("--left")
    c.add_argument("--right")
    c.add_argument("--left-kind", default="trivial", choices=["trivial", "optrivial"])
    c.add_argument("--action", default="inversion", choices=["trivial", "inversion"])
    c.add_argument("--mod", type=int)
    c.add_argument("--xs")
    c.add_argument("--auts", default="inversion", choices=["inversion", "unitriangular"])
    c.add_argument("--subgroup", default="whole", help="whole, center, derived or gen:i,j,...")
    c.add_argument("--homs", default="all", choices=["all", "identity"])
    c.add_argument("--limit", type=int)
    c.add_argument("--brace")
    c.add_argument("--ring", help="m,x for the ring brace on (Z/m)^2")
    c.add_argument("--ns")
    c.add_argument("--power", type=int, default=2)
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("enumerate", help="enumerate skew braces on small groups")
    e.add_argument("--order", type=int)
    e.add_argument("--group")
    e.add_argument("--group-file")
    e.add_argument("--filter", action="append", help="bi, gh, brace (comma-separated or repeated)")
    e.add_argument("--up-to-iso", action="store_true", default=True)
    e.add_argument("--labelled", action="store_true", help="count labelled braces instead of classes")
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--out")
    e.set_defaults(func=cmd_enumerate)

    y = sub.add_parser("ybe", help="Yang-Baxter solutions")
    y.add_argument("sub", choices=["derive", "check", "invert", "retract", "level", "iso", "taumultiset", "group"])
    y.add_argument("paths", nargs="+")
    y.add_argument("-o", "--out")
    y.add_argument("--swap", action="store_true", help="derive from the swapped brace")
    y.add_argument("--opposite", action="store_true", help="derive from the opposite brace")
    y.add_argument("--cap", type=int, default=16)
    y.add_argument("--bound", type=int, default=ybe.CLOSURE_BOUND)
    y.set_defaults(func=cmd_ybe)

    s = sub.add_parser("sample", help="window checks for the Z and Z^2 families")
    s.add_argument("family", choices=["z", "z2"])
    s.add_argument("--variant", default="mult2")
    s.add_argument("--x", type=int)
    s.add_argument("--bound", type=int, default=inf.DEFAULT_BOUND)
    s.add_argument("--props")
    s.set_defaults(func=cmd_sample)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (OrderBoundExceeded, ClosureBoundExceeded) as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except BraceError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
