"""Command-line front end: build, verify, export, compare.

Exit codes: 0 success / all checks pass, 2 precondition violation,
3 resource cap exceeded, 1 internal inconsistency (always a bug).
Identical configuration and seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .caps import Caps, caps_from_env
from .certify import (
    FAMILIES,
    SUITES,
    appropriateness_report,
    compare_report,
    lattice_to_poset,
    make_family,
    run_suite,
)
from .constructions import (
    default_preset,
    e_S,
    loday_inequalities,
    nested_perm_rhs,
    perm_inequalities,
    permasso_rhs,
)
from .combinat import enumerate_ordered_partitions
from .errors import (
    InternalConsistencyError,
    PreconditionError,
    ResourceLimitError,
)
from .exact import as_vec
from .geometry import export_off, face_lattice, incidence
from .posets import build_K, build_KPi, build_O


@dataclass
class RunConfig:
    d: int
    alpha: tuple | None = None
    beta: tuple | None = None
    family: str = "permasso"
    seed: int = 0
    caps: Caps = field(default_factory=caps_from_env)

    def __post_init__(self):
        if self.d < 1:
            raise PreconditionError("d must be >= 1")
        if self.family not in FAMILIES:
            raise PreconditionError("unknown family %r" % self.family)
        if self.alpha is not None and len(self.alpha) != self.d + 1:
            raise PreconditionError("alpha must have d+1 entries")
        if self.beta is not None and len(self.beta) != self.d:
            raise PreconditionError("beta must have d entries")


def parse_rationals(text: str):
    try:
        return as_vec(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError("cannot parse rational list %r: %s" % (text, exc))


def fmt_rat(x: Fraction) -> str:
    return "%d/%d" % (x.numerator, x.denominator) if x.denominator != 1 else str(x.numerator)


def preset_dumps(d, alpha, beta) -> str:
    return "d = %d\nalpha = %s\nbeta = %s\n" % (
        d,
        ", ".join(fmt_rat(x) for x in alpha),
        ", ".join(fmt_rat(x) for x in beta),
    )


def preset_loads(text: str):
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise PreconditionError("bad preset line %r" % line)
        key, _, val = line.partition("=")
        fields[key.strip()] = val.strip()
    try:
        d = int(fields["d"])
        alpha = parse_rationals(fields["alpha"])
        beta = parse_rationals(fields["beta"])
    except KeyError as exc:
        raise PreconditionError("preset missing field %s" % exc)
    return d, alpha, beta


def _write(out, text: str):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def polytope_json(cfg: RunConfig, with_lattice: bool) -> str:
    fam = make_family(cfg.family, cfg.d, cfg.alpha, cfg.beta, cfg.caps)
    doc = {
        "family": cfg.family,
        "d": cfg.d,
        "alpha": [fmt_rat(x) for x in fam.ab.alpha],
        "beta": [fmt_rat(x) for x in fam.ab.beta],
        "vertices": [[fmt_rat(x) for x in p] for p in fam.vp.points],
        "facets": [
            {"normal": [fmt_rat(x) for x in h.normal], "offset": fmt_rat(h.offset)}
            for h in fam.hp.facets
        ],
    }
    if with_lattice:
        inc = incidence(fam.hp, fam.vp)
        fl = face_lattice(inc, fam.vp)
        doc["face_lattice"] = {
            "rank": list(fl.ranks),
            "vertex_sets": [sorted(f) for f in fl.faces],
            "covers": [list(c) for c in fl.covers],
        }
    return json.dumps(doc, indent=1) + "\n"


def cmd_build(cfg: RunConfig, out) -> int:
    _write(out, polytope_json(cfg, with_lattice=cfg.d <= 3))
    return 0


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    results = run_suite(
        cfg.family, cfg.d, suite, cfg.alpha, cfg.beta, cfg.seed, cfg.caps
    )
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def ineq_listing(cfg: RunConfig) -> str:
    """One line 'normal | rhs' per inequality in natural listing order."""
    lines = []
    if cfg.family in ("perm", "lodasso"):
        alpha = cfg.alpha if cfg.alpha is not None else default_preset(cfg.d, cfg.caps).alpha
        hp = (perm_inequalities if cfg.family == "perm" else loday_inequalities)(alpha)
        for h in hp.facets:
            lines.append(
                "%s | %s" % (",".join(fmt_rat(x) for x in h.normal), fmt_rat(h.offset))
            )
    else:
        fam = make_family(cfg.family, cfg.d, cfg.alpha, cfg.beta, cfg.caps)
        rhs_fn = nested_perm_rhs if cfg.family == "nestedperm" else permasso_rhs
        for s in enumerate_ordered_partitions(cfg.d + 1, 2, cfg.caps):
            lines.append(
                "%s | %s"
                % (",".join(fmt_rat(x) for x in e_S(s)), fmt_rat(rhs_fn(fam.ab, s)))
            )
    return "\n".join(lines) + "\n"


def cmd_export(cfg: RunConfig, fmt: str, out) -> int:
    if fmt == "json":
        _write(out, polytope_json(cfg, with_lattice=cfg.d <= 3))
    elif fmt == "ineq":
        _write(out, ineq_listing(cfg))
    elif fmt == "off":
        if cfg.d != 3:
            raise PreconditionError("OFF export requires d=3")
        fam = make_family(cfg.family, cfg.d, cfg.alpha, cfg.beta, cfg.caps)
        inc = incidence(fam.hp, fam.vp)
        _write(out, export_off(fam.hp, fam.vp, inc))
    elif fmt == "dot":
        if cfg.family == "perm":
            poset = build_O(cfg.d + 1, cfg.caps)
        elif cfg.family == "lodasso":
            poset = build_K(cfg.d, cfg.caps)
        elif cfg.family == "permasso":
            poset = build_KPi(cfg.d, cfg.caps)
        else:
            fam = make_family(cfg.family, cfg.d, cfg.alpha, cfg.beta, cfg.caps)
            poset = lattice_to_poset(
                face_lattice(incidence(fam.hp, fam.vp), fam.vp)
            )
        _write(out, poset.to_dot())
    else:
        raise PreconditionError("unknown export format %r" % fmt)
    return 0


def cmd_compare(cfg: RunConfig, out) -> int:
    if cfg.d > 3:
        raise PreconditionError("comparison report supports d <= 3")
    text = compare_report(cfg.d, caps=cfg.caps)
    text += "\n" + appropriateness_report(cfg.d, cfg.caps)
    _write(out, text)
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="polykap",
        description="Exact constructions and certification of permutohedra, "
        "associahedra and permuto-associahedra.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--d", type=int, default=2, help="dimension parameter")
        sp.add_argument("--alpha", help="comma-separated rationals p/q, d+1 entries")
        sp.add_argument("--beta", help="comma-separated rationals p/q, d entries")
        sp.add_argument("--preset", help="read d, alpha, beta from a preset file")
        sp.add_argument(
            "--family",
            choices=FAMILIES,
            default="permasso",
            help="polytope family",
        )
        sp.add_argument("--seed", type=int, default=0, help="sampling seed")
        sp.add_argument(
            "--allow-d4",
            action="store_true",
            help="permit heavy hull computations at d >= 4",
        )
        sp.add_argument("--out", help="output path (default stdout)")

    sp = sub.add_parser("build", help="write vertices, facets and face lattice as JSON")
    common(sp)
    sp = sub.add_parser("verify", help="run a certification suite")
    common(sp)
    sp.add_argument("--suite", choices=SUITES, default="all")
    sp = sub.add_parser("export", help="export OFF / DOT / JSON / inequality listing")
    common(sp)
    sp.add_argument("--format", choices=("off", "dot", "json", "ineq"), default="json")
    sp = sub.add_parser("compare", help="print the realization comparison report")
    common(sp)
    return p


def config_from_args(args) -> RunConfig:
    d = args.d
    alpha = parse_rationals(args.alpha) if args.alpha else None
    beta = parse_rationals(args.beta) if args.beta else None
    if args.preset:
        with open(args.preset) as fh:
            d, alpha, beta = preset_loads(fh.read())
    return RunConfig(
        d=d,
        alpha=alpha,
        beta=beta,
        family=args.family,
        seed=args.seed,
        caps=caps_from_env(),
    )


def _needs_hull(args) -> bool:
    return args.command in ("build", "export") or (
        args.command == "verify" and getattr(args, "suite", "all") != "dissection"
    )


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        if cfg.d >= 4 and _needs_hull(args) and not args.allow_d4:
            raise ResourceLimitError(
                "d >= 4 hull computations are minutes-scale; pass --allow-d4"
            )
        if args.command == "build":
            return cmd_build(cfg, args.out)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite)
        if args.command == "export":
            return cmd_export(cfg, args.format, args.out)
        return cmd_compare(cfg, args.out)
    except PreconditionError as exc:
        print("precondition violated: %s" % exc, file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print("resource limit: %s" % exc, file=sys.stderr)
        return 3
    except InternalConsistencyError as exc:
        print("internal inconsistency (this is a bug): %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
