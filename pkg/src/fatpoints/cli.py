"""Command-line front end.

Commands: hilbert, reg, segre, gen, verify, compare-embedding.
Exit codes: 0 success / all checks pass, 1 verification failure,
2 invalid input or unsupported characteristic.  Output is byte-stable for
fixed inputs and flags: canonical JSON, no timestamps, no floats.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (
    FatPointsError,
    GenerationFailureError,
    InvalidInputError,
    UnsupportedCharacteristicError,
)
from .fields import PrimeField
from .generators import GenSpec, generate
from .harness import SUITES, run_theorem_suite
from .schemes import embed, hilbert_profile, regularity_index, with_field
from .segre import segre_bound
from .serialization import dumps_canonical, load_scheme, save_scheme, scheme_to_obj

_FAMILY_ALIASES = {
    "generic": "generic",
    "collinear": "collinear",
    "simplex": "simplex",
    "rnc": "rnc",
    "on-flat-general-position": "on_flat_general_position",
    "example-4-4": "example_4_4",
    "corollary-4-5": "corollary_4_5",
}


def _add_scheme_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("scheme_file", nargs="?", help="scheme JSON file (positional)")
    parser.add_argument("--scheme", "-s", dest="scheme_opt", help="scheme JSON file")


def _scheme_path(args) -> str:
    if args.scheme_opt and args.scheme_file:
        raise InvalidInputError("give the scheme file either positionally or via --scheme, not both")
    path = args.scheme_opt or args.scheme_file
    if not path:
        raise InvalidInputError("a scheme file is required")
    return path


def _write_out(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fatpoints",
        description="Exact Hilbert functions, regularity indices and Segre bounds of fat point schemes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_hilbert = sub.add_parser("hilbert", help="tabulate H(t) and dim I_t")
    _add_scheme_arg(p_hilbert)
    p_hilbert.add_argument("--t-max", type=int, required=True)
    p_hilbert.add_argument("--format", choices=["plain", "json", "csv"], default="plain")

    p_reg = sub.add_parser("reg", help="regularity index")
    _add_scheme_arg(p_reg)

    p_segre = sub.add_parser("segre", help="Segre bound report with witnesses")
    _add_scheme_arg(p_segre)

    p_gen = sub.add_parser("gen", help="generate a configuration family")
    p_gen.add_argument("--family", required=True, choices=sorted(_FAMILY_ALIASES))
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--s", type=int)
    p_gen.add_argument("--m", default="1", help="uniform multiplicity or comma list, e.g. 2 or 2,1,1")
    p_gen.add_argument("--r", type=int, help="flat dimension for on-flat-general-position")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--coord-bound", type=int, default=10_000)
    p_gen.add_argument("--max-tries", type=int, default=64)
    p_gen.add_argument("--field", choices=["rational", "prime"], default="rational")
    p_gen.add_argument("--prime", type=int, default=2147483647)
    p_gen.add_argument("--out", "-o")

    p_verify = sub.add_parser("verify", help="run the theorem check suites")
    p_verify.add_argument("--suite", default="all", help=f"'all', 'none' or comma list of {list(SUITES)}")
    p_verify.add_argument("--trials", type=int, default=3)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--out", "-o", help="write the JSON report here")

    p_cmp = sub.add_parser("compare-embedding", help="profiles before/after a seeded embedding")
    _add_scheme_arg(p_cmp)
    p_cmp.add_argument("--target-n", type=int, required=True)
    p_cmp.add_argument("--seed", type=int, default=0)
    p_cmp.add_argument("--format", choices=["plain", "json"], default="plain")
    return parser


def _parse_mults(text: str):
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise InvalidInputError(f"bad multiplicity list {text!r}") from exc
    return parts[0] if len(parts) == 1 else tuple(parts)


def _cmd_gen(args) -> int:
    spec = GenSpec(
        family=_FAMILY_ALIASES[args.family],
        n=args.n,
        s=args.s,
        m=_parse_mults(args.m),
        seed=args.seed,
        r=args.r,
        coord_bound=args.coord_bound,
        max_tries=args.max_tries,
    )
    z = generate(spec)
    if args.field == "prime":
        z = with_field(z, PrimeField(args.prime))
    if args.out:
        save_scheme(z, args.out)
    else:
        sys.stdout.write(dumps_canonical(scheme_to_obj(z)) + "\n")
    return 0


def _cmd_hilbert(args) -> int:
    z = load_scheme(_scheme_path(args))
    profile = hilbert_profile(z, args.t_max)
    if args.format == "json":
        obj = {
            "t_max": profile.t_max,
            "rows": [
                {"t": t, "hilbert": h, "ideal_dim": d}
                for t, (h, d) in enumerate(zip(profile.hilbert_values, profile.ideal_dims))
            ],
            "e": profile.multiplicity,
            "reg": profile.regularity,
        }
        sys.stdout.write(dumps_canonical(obj) + "\n")
    elif args.format == "csv":
        lines = ["t,hilbert,ideal_dim"]
        for t, (h, d) in enumerate(zip(profile.hilbert_values, profile.ideal_dims)):
            lines.append(f"{t},{h},{d}")
        lines.append(f"e,{profile.multiplicity}")
        if profile.regularity is not None:
            lines.append(f"reg,{profile.regularity}")
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        lines = [f"{'t':>4} {'H(t)':>10} {'dim I_t':>10}"]
        for t, (h, d) in enumerate(zip(profile.hilbert_values, profile.ideal_dims)):
            lines.append(f"{t:>4} {h:>10} {d:>10}")
        lines.append(f"e   = {profile.multiplicity}")
        lines.append(f"reg = {profile.regularity if profile.regularity is not None else 'not reached'}")
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _cmd_reg(args) -> int:
    z = load_scheme(_scheme_path(args))
    sys.stdout.write(f"{regularity_index(z)}\n")
    return 0


def _cmd_segre(args) -> int:
    z = load_scheme(_scheme_path(args))
    report = segre_bound(z)
    obj = {
        "T": report.bound,
        "p_min": report.p_min,
        "per_j": [
            {
                "j": w.j,
                "T_j": w.value,
                "witness": {
                    "flat_dim": w.flat.dim,
                    "basis": [[z.field.to_string(x) for x in row] for row in w.flat.basis],
                    "incident": list(w.incident),
                    "weight": w.weight,
                },
            }
            for w in report.witnesses
        ],
    }
    sys.stdout.write(dumps_canonical(obj) + "\n")
    return 0


def _cmd_verify(args) -> int:
    raw = args.suite.strip()
    if raw == "all":
        selection = "all"
    elif raw in ("none", ""):
        selection = []
    else:
        selection = [part.strip() for part in raw.split(",") if part.strip()]
    report = run_theorem_suite(selection, trials=args.trials, seed=args.seed)
    text = dumps_canonical(report.to_obj()) + "\n"
    if args.out:
        _write_out(text, args.out)
    for check in report.checks:
        tag = " [info]" if check.informational else ""
        sys.stdout.write(f"{check.verdict.upper():>20}  {check.check_id}{tag}\n")
    c = report.counts
    sys.stdout.write(
        f"pass={c['pass']} fail={c['fail']} hypothesis-not-met={c['hypothesis-not-met']} "
        f"overall={'PASS' if report.overall_pass else 'FAIL'}\n"
    )
    return 0 if report.overall_pass else 1


def _cmd_compare_embedding(args) -> int:
    z = load_scheme(_scheme_path(args))
    widened = embed(z, args.target_n, seed=args.seed)
    reg = regularity_index(z)
    t_max = reg + 2
    base_profile = hilbert_profile(z, t_max)
    wide_profile = hilbert_profile(widened, t_max)
    obj = {
        "n": z.n,
        "target_n": args.target_n,
        "seed": args.seed,
        "e": base_profile.multiplicity,
        "e_embedded": wide_profile.multiplicity,
        "reg": base_profile.regularity,
        "reg_embedded": wide_profile.regularity,
        "reg_equal": base_profile.regularity == wide_profile.regularity,
        "rows": [
            {"t": t, "hilbert": h0, "hilbert_embedded": h1}
            for t, (h0, h1) in enumerate(zip(base_profile.hilbert_values, wide_profile.hilbert_values))
        ],
    }
    if args.format == "json":
        sys.stdout.write(dumps_canonical(obj) + "\n")
    else:
        lines = [f"{'t':>4} {'H(t)':>10} {'H_embedded(t)':>14}"]
        for row in obj["rows"]:
            lines.append(f"{row['t']:>4} {row['hilbert']:>10} {row['hilbert_embedded']:>14}")
        lines.append(f"e = {obj['e']}, e_embedded = {obj['e_embedded']}")
        lines.append(f"reg = {obj['reg']}, reg_embedded = {obj['reg_embedded']}, equal = {obj['reg_equal']}")
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


_DISPATCH = {
    "gen": _cmd_gen,
    "hilbert": _cmd_hilbert,
    "reg": _cmd_reg,
    "segre": _cmd_segre,
    "verify": _cmd_verify,
    "compare-embedding": _cmd_compare_embedding,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (InvalidInputError, UnsupportedCharacteristicError, GenerationFailureError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except FatPointsError as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        raise


if __name__ == "__main__":
    sys.exit(main())
