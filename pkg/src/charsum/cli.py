"""charsum command-line interface.

Subcommands: char, sum, gauss, lvalue, window, search, experiment.
Exit codes: 0 success, 2 invalid argument, 3 infeasible or not found,
4 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from charsum import __version__
from charsum.analysis import (
    PrefixSumTable,
    fourier_constant_term,
    gauss_sum,
    l_value_at_one,
    window_report,
)
from charsum.characters import jacobi_symbol
from charsum.constructions import (
    LocalCondition,
    SearchSpec,
    find_prime_in_class,
    paley_modulus,
    reciprocity_conditions,
    residue_one_modulus,
)
from charsum.errors import (
    CharsumError,
    InfeasibleError,
    InvalidArgumentError,
    NotFoundError,
)
from charsum.experiments import (
    ExperimentReport,
    _resolve_character,
    default_alpha_grid,
    run_corollary,
    run_lemma3,
    run_smoothness,
    run_thm1,
    run_thm2,
    run_thm3,
    run_thm4,
)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgumentError(f"bad rational {text!r}") from exc


def _parse_int_list(text: str) -> list[int]:
    """Comma-separated integers; 'a-b' runs are inclusive ranges."""
    out: list[int] = []
    for tok in text.split(","):
        tok = tok.strip()
        if "-" in tok[1:]:
            a, b = tok.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        elif tok:
            out.append(int(tok))
    if not out:
        raise InvalidArgumentError(f"empty integer list {text!r}")
    return out


def _character_from_args(args):
    if args.modulus is None:
        raise InvalidArgumentError("--modulus is required")
    if args.quadratic or args.index is None:
        return _resolve_character(args.modulus, None)
    return _resolve_character(args.modulus, args.index)


def _emit(payload, args) -> None:
    fmt = getattr(args, "format", "json")
    if isinstance(payload, ExperimentReport):
        text = payload.to_json() if fmt == "json" else payload.to_csv()
    elif fmt == "json":
        text = json.dumps(payload, indent=1)
    else:
        keys = list(payload.keys())
        lines = [",".join(keys), ",".join(str(payload[k]) for k in keys)]
        text = "\n".join(lines) + "\n"
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _complex_fields(prefix: str, z: complex) -> dict:
    return {f"{prefix}_re": z.real, f"{prefix}_im": z.imag}


def _cmd_char(args) -> None:
    chi = _character_from_args(args)
    _emit(
        {
            "modulus": chi.modulus,
            "index": chi.label(),
            "order": chi.order,
            "parity": "even" if chi.is_even else "odd",
            "conductor": chi.conductor,
            "primitive": chi.is_primitive,
            "real": chi.is_real,
        },
        args,
    )


def _cmd_sum(args) -> None:
    chi = _character_from_args(args)
    table = PrefixSumTable(chi)
    x = float(args.x)
    argmax, peak = table.max_abs()
    payload = {
        "modulus": chi.modulus,
        "index": chi.label(),
        "x": x,
        **_complex_fields("sum", complex(table.sum_to(x))),
        **_complex_fields("midpoint", complex(table.midpoint_sum(x))),
        "max_at": argmax,
        "max_abs": float(peak),
    }
    if args.x0 is not None and args.length is not None:
        n_star, val = table.short_interval_max(args.x0, args.length)
        payload["short_n_star"] = n_star
        payload["short_best"] = float(val)
    _emit(payload, args)


def _cmd_gauss(args) -> None:
    chi = _character_from_args(args)
    tau = gauss_sum(chi)
    _emit(
        {
            "modulus": chi.modulus,
            "index": chi.label(),
            **_complex_fields("tau", tau.value),
            "magnitude_squared": tau.magnitude_squared,
        },
        args,
    )


def _cmd_lvalue(args) -> None:
    chi = _character_from_args(args)
    lval = l_value_at_one(chi)
    const = fourier_constant_term(chi)
    _emit(
        {
            "modulus": chi.modulus,
            "index": chi.label(),
            **_complex_fields("l_one", lval),
            **_complex_fields("constant_term", const),
        },
        args,
    )


def _cmd_window(args) -> None:
    chi = _character_from_args(args)
    table = PrefixSumTable(chi)
    rep = window_report(table, args.alpha, args.window_b)
    payload = {
        "modulus": chi.modulus,
        "index": chi.label(),
        "alpha": str(rep.alpha),
        "b": str(rep.b),
        "lhs_exact": str(rep.lhs_exact),
        **_complex_fields("lhs", complex(rep.lhs_exact)),
        **_complex_fields("constant_term", rep.constant_term),
        **_complex_fields("rhs_truncated", rep.rhs_truncated),
        **_complex_fields("residual", rep.residual),
        "residual_over_sqrt_q": rep.residual_over_sqrt_q,
    }
    _emit(payload, args)


def _parse_conditions(text: str) -> tuple[LocalCondition, ...]:
    conds = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        p, s = tok.split(":")
        conds.append(LocalCondition(int(p), int(s)))
    return tuple(conds)


def _cmd_search(args) -> None:
    if args.residue_one is not None:
        pm = residue_one_modulus(args.residue_one, hi=args.hi)
        kind = "residue-one"
        scan = {str(p): jacobi_symbol(p, pm.q1) for p in range(2, args.residue_one)}
    elif args.paley is not None:
        pm = paley_modulus(args.paley, hi=args.hi)
        kind = "paley"
        scan = {str(n): jacobi_symbol(n, pm.q1) for n in range(3, args.paley, 2)}
    else:
        if args.conditions is None or args.parity is None:
            raise InvalidArgumentError(
                "provide --residue-one Y, --paley Y, or --conditions with --parity"
            )
        res, mod = args.parity.split(":")
        spec = SearchSpec(
            conditions=_parse_conditions(args.conditions),
            parity_residue=int(res),
            parity_modulus=int(mod),
        )
        r, m = reciprocity_conditions(spec)
        q = find_prime_in_class(r, m, lo=args.lo, hi=args.hi)
        _emit(
            {
                "kind": "conditions",
                "class_r": r,
                "class_m": m,
                "prime": q,
                "scan": json.dumps(
                    {c.prime: jacobi_symbol(c.prime, q) for c in spec.conditions}
                ),
            },
            args,
        )
        return
    _emit(
        {
            "kind": kind,
            "prime": pm.q1,
            "depth": pm.depth,
            "class_r": pm.residue_class[0],
            "class_m": pm.residue_class[1],
            "scan": json.dumps(scan),
        },
        args,
    )


def _cmd_experiment(args) -> None:
    stamp = None
    if args.stamp:
        import datetime

        stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    name = args.name
    if name == "thm1":
        alphas = None
        if args.sample_alphas:
            import random

            rng = random.Random(args.seed)
            den = args.alpha_den
            alphas = sorted({Fraction(rng.randrange(den), den) for _ in range(args.sample_alphas)})
        elif args.alpha_den != 40:
            alphas = default_alpha_grid(args.alpha_den)
        report = run_thm1(
            _parse_int_list(args.q_list),
            alphas=alphas,
            b_list=None if args.b_list is None else _parse_int_list(args.b_list),
            sweep=args.sweep,
            threads=args.threads,
            seed=args.seed,
            stamp=stamp,
        )
    elif name == "lemma3":
        report = run_lemma3(
            q=args.modulus or 4,
            index=args.index,
            a=args.a,
            x_lo=args.x_lo,
            x_hi=args.x_hi,
            seed=args.seed,
            stamp=stamp,
        )
    elif name == "thm2":
        report = run_thm2(args.b, psi_index=args.psi_index, y=args.y, seed=args.seed, stamp=stamp)
    elif name == "thm3":
        report = run_thm3(args.b, y=args.y, seed=args.seed, stamp=stamp)
    elif name == "corollary":
        chi = _character_from_args(args)
        report = run_corollary(chi, args.a_param, seed=args.seed, stamp=stamp)
    elif name == "thm4":
        report = run_thm4(
            _parse_int_list(args.y_list), search_hi=args.hi, seed=args.seed, stamp=stamp
        )
    elif name == "smoothness":
        report = run_smoothness(
            _parse_int_list(args.a_grid),
            _parse_int_list(args.b_grid),
            seed=args.seed,
            stamp=stamp,
        )
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidArgumentError(f"unknown experiment {name!r}")
    _emit(report, args)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--modulus", type=int, help="character modulus q")
    p.add_argument("--index", help="exponent-vector index, e.g. '3' or '1,2'")
    p.add_argument("--quadratic", action="store_true", help="use the quadratic character")
    p.add_argument("--alpha", type=_parse_fraction, default=Fraction(1, 2), help="window center N/D")
    p.add_argument("--B", dest="window_b", type=_parse_fraction, default=Fraction(4), help="window parameter")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="charsum",
        description="Character-sum step functions, window averages, and extremal searches.",
    )
    parser.add_argument("--version", action="version", version=f"charsum {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("char", help="describe a character")
    _add_common(p)
    p.set_defaults(func=_cmd_char)

    p = subs.add_parser("sum", help="character-sum values and maxima")
    _add_common(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--x0", type=int, help="short-interval start")
    p.add_argument("--length", type=int, help="short-interval max length")
    p.set_defaults(func=_cmd_sum)

    p = subs.add_parser("gauss", help="Gauss sum of a character")
    _add_common(p)
    p.set_defaults(func=_cmd_gauss)

    p = subs.add_parser("lvalue", help="L(1, chi) and the expansion constant")
    _add_common(p)
    p.set_defaults(func=_cmd_lvalue)

    p = subs.add_parser("window", help="exact window average vs truncated prediction")
    _add_common(p)
    p.set_defaults(func=_cmd_window)

    p = subs.add_parser("search", help="find primes with prescribed symbol conditions")
    _add_common(p)
    p.add_argument("--residue-one", type=int, help="depth y: (p|q)=1 for all p<y, q=3 mod 4")
    p.add_argument("--paley", type=int, help="depth y for the mod-4 mimicry pattern")
    p.add_argument("--conditions", help="prime:sign list, e.g. '2:1,3:1,5:-1'")
    p.add_argument("--parity", help="residue:modulus, e.g. '3:4'")
    p.add_argument("--lo", type=int, default=None)
    p.add_argument("--hi", type=int, default=1 << 62)
    p.set_defaults(func=_cmd_search)

    p = subs.add_parser("experiment", help="run an experiment driver")
    _add_common(p)
    p.add_argument(
        "name",
        choices=("thm1", "lemma3", "thm2", "thm3", "corollary", "thm4", "smoothness"),
    )
    p.add_argument("--stamp", action="store_true", help="record a wall-clock timestamp")
    p.add_argument("--q-list", default="3-24")
    p.add_argument("--alpha-den", type=int, default=40)
    p.add_argument("--sample-alphas", type=int, default=None)
    p.add_argument("--b-list", default="2,4,8")
    p.add_argument("--sweep", action="store_true", help="aggregate per modulus, derive B from sqrt q")
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--x-lo", type=int, default=100)
    p.add_argument("--x-hi", type=int, default=10**6)
    p.add_argument("--b", type=int, default=3)
    p.add_argument("--psi-index", default=None)
    p.add_argument("--y", type=int, default=7)
    p.add_argument("--y-list", default="3,5,7")
    p.add_argument("--a-param", type=float, default=1.0)
    p.add_argument("--a-grid", default="2-20")
    p.add_argument("--b-grid", default="10-100")
    p.add_argument("--hi", type=int, default=10**7)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "experiment" and args.name == "thm1" and args.b_list == "2,4,8" and args.sweep:
        args.b_list = None
    try:
        args.func(args)
    except InvalidArgumentError as exc:
        print(f"charsum: invalid argument: {exc}", file=sys.stderr)
        return 2
    except (InfeasibleError, NotFoundError) as exc:
        print(f"charsum: {exc}", file=sys.stderr)
        return 3
    except (CharsumError, AssertionError) as exc:
        print(f"charsum: internal error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
