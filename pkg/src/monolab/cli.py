"""Command-line interface: measures, bound checks, sweeps, figure CSVs."""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import verify
from .errors import MonolabError, UnsupportedError
from .inequalities import (
    BoundSpec,
    MONOGAMY,
    POLYGAMY,
    SPLIT_ON_B,
    SPLIT_ON_C,
    admissible_monogamy,
    admissible_polygamy,
    check_monogamy_tripartite,
    check_polygamy_tripartite,
    figure_csv,
    format_float,
)
from .measures import (
    MEASURE_PROFILES,
    concurrence_assist_2q,
    concurrence_mixed_2q,
    concurrence_pure,
    negativity,
    negativity_pure,
    tripartite_triple,
)
from .qstate import (
    DensityMatrix,
    EXAMPLE_PARAMS,
    GenSchmidtParams,
    PureState,
    density_from_pure,
    gen_schmidt_state,
    ghz,
    haar_random_pure,
    partial_trace,
    state_from_json_dict,
    w_state,
)


def _add_state_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--gen-schmidt", metavar="L0,L1,L2,L3,L4[,PHI]",
                   help="canonical three-qubit state parameters")
    g.add_argument("--ghz", type=int, metavar="N", help="N-qubit GHZ state")
    g.add_argument("--w", type=int, metavar="N", help="N-qubit W state")
    g.add_argument("--random", metavar="D1,...,DK,SEED",
                   help="Haar-random pure state; the last integer is the seed")
    g.add_argument("--state-file", metavar="PATH", help="JSON state file")
    p.add_argument("--normalize", action="store_true",
                   help="rescale --gen-schmidt parameters to unit norm")


def _parse_state(args) -> PureState | DensityMatrix:
    if args.gen_schmidt is not None:
        parts = [float(x) for x in args.gen_schmidt.split(",")]
        if len(parts) not in (5, 6):
            raise UnsupportedError(
                "--gen-schmidt needs five lambda values and an optional phase"
            )
        lam = parts[:5]
        phi = parts[5] if len(parts) == 6 else 0.0
        if args.normalize:
            norm = math.sqrt(sum(x * x for x in lam))
            if norm == 0.0:
                raise UnsupportedError("cannot normalize all-zero parameters")
            lam = [x / norm for x in lam]
        return gen_schmidt_state(GenSchmidtParams(tuple(lam), phi))
    if args.ghz is not None:
        return ghz(args.ghz)
    if args.w is not None:
        return w_state(args.w)
    if args.random is not None:
        parts = [int(x) for x in args.random.split(",")]
        if len(parts) < 2:
            raise UnsupportedError("--random needs at least one dimension and a seed")
        return haar_random_pure(tuple(parts[:-1]), parts[-1])
    with open(args.state_file, "r", encoding="utf-8") as fh:
        return state_from_json_dict(json.load(fh))


def _print(obj: dict, as_json: bool, table_lines) -> None:
    if as_json:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in table_lines:
            print(line)


def _measures_payload(state) -> dict:
    if isinstance(state, PureState):
        out = {
            "kind": "pure",
            "dims": list(state.dims),
            "global": {
                "concurrence": concurrence_pure(state, (0,)),
                "negativity": negativity_pure(state, (0,)),
            },
            "pairs": {},
        }
        if state.n_subsystems >= 3 and all(d == 2 for d in state.dims):
            rho = density_from_pure(state)
            for k in range(1, state.n_subsystems):
                marg = partial_trace(rho, (0, k))
                c = concurrence_mixed_2q(marg)
                ca = concurrence_assist_2q(marg)
                out["pairs"][f"0-{k}"] = {
                    "concurrence": c,
                    "concurrence_assist": ca,
                    "negativity": negativity(marg, (0,)),
                    "cren": c,
                    "crenoa": ca,
                }
        return out
    if state.dims == (2, 2):
        c = concurrence_mixed_2q(state)
        ca = concurrence_assist_2q(state)
        return {
            "kind": "density",
            "dims": list(state.dims),
            "values": {
                "concurrence": c,
                "concurrence_assist": ca,
                "negativity": negativity(state, (0,)),
                "cren": c,
                "crenoa": ca,
            },
        }
    return {
        "kind": "density",
        "dims": list(state.dims),
        "values": {"negativity": negativity(state, (0,))},
    }


def cmd_measures(args) -> int:
    payload = _measures_payload(_parse_state(args))
    lines = [f"dims = {','.join(str(d) for d in payload['dims'])}"]
    if payload["kind"] == "pure":
        for name, v in payload["global"].items():
            lines.append(f"{name}_0|rest = {format_float(v)}")
        for pair, vals in payload["pairs"].items():
            row = "  ".join(f"{k}={format_float(v)}" for k, v in vals.items())
            lines.append(f"pair {pair}: {row}")
    else:
        for name, v in payload["values"].items():
            lines.append(f"{name} = {format_float(v)}")
    _print(payload, args.json, lines)
    return 0


def cmd_check(args) -> int:
    state = _parse_state(args)
    if not isinstance(state, PureState) or state.n_subsystems != 3:
        raise UnsupportedError(
            "check needs a pure state on exactly three subsystems"
        )
    mode = args.mode
    measure = args.measure or ("concurrence" if mode == MONOGAMY else "crenoa")
    profile = MEASURE_PROFILES.get(measure)
    if profile is None or profile.mode != mode:
        raise UnsupportedError(f"measure {measure!r} does not support {mode} checks")

    base = args.gamma if mode == MONOGAMY else args.delta
    exponent = args.alpha if mode == MONOGAMY else args.beta
    top, ab, ac = tripartite_triple(state, measure)

    if args.case is not None:
        case = args.case
    else:
        case = SPLIT_ON_C if ab <= ac else SPLIT_ON_B
    plain, cond = (ab, ac) if case == SPLIT_ON_C else (ac, ab)

    h, u = args.h, args.u
    if h is None or u is None:
        # admissibility is only computed when a default is actually needed,
        # so explicit (h, u) on a degenerate state still reaches the checker
        if mode == MONOGAMY:
            adm = admissible_monogamy(top, plain, cond, base)
            default_u = max(1.0, adm.u_extreme)
        else:
            adm = admissible_polygamy(top, plain, cond, base)
            default_u = adm.u_extreme
        if h is None:
            h = min(1.0, adm.h_min)
        if u is None:
            u = default_u

    spec = BoundSpec(exponent=exponent, base=base, h=h, u=u, case=case)
    if mode == MONOGAMY:
        report = check_monogamy_tripartite(top, ab, ac, spec)
    else:
        report = check_polygamy_tripartite(top, ab, ac, spec)

    payload = {
        "mode": mode,
        "measure": measure,
        "triple": {"global": top, "pair_01": ab, "pair_02": ac},
        "spec": {"exponent": exponent, "base": base, "h": h, "u": u, "case": case},
        "report": report.to_dict(),
    }
    lines = [
        f"mode = {mode}  measure = {measure}  case = {case}",
        f"values: global={format_float(top)} pair01={format_float(ab)} "
        f"pair02={format_float(ac)}",
        f"exponent = {format_float(exponent)}  base = {format_float(base)}  "
        f"h = {format_float(h)}  u = {format_float(u)}",
        f"lhs = {format_float(report.lhs)}",
        f"rhs = {format_float(report.rhs)}",
        f"margin = {format_float(report.margin)}",
        f"holds = {str(report.holds).lower()}",
    ]
    _print(payload, args.json, lines)
    return 0


def cmd_sweep(args) -> int:
    grid = tuple(float(x) for x in args.exponents.split(","))
    cfg = verify.SweepConfig(
        n_states=args.n,
        seed=args.seed,
        system=args.system,
        measure=args.measure,
        exponent_grid=grid,
        base_exponent=args.base,
        rank=args.rank,
        h_override=args.h,
        u_override=args.u,
    )
    summary = verify.run_sweep(cfg)
    payload = {"config": {
        "n_states": cfg.n_states, "seed": cfg.seed, "system": cfg.system,
        "measure": cfg.measure, "exponent_grid": list(cfg.exponent_grid),
        "base_exponent": cfg.base_exponent, "rank": cfg.rank,
    }, "summary": summary.to_dict()}
    d = summary.to_dict()
    head = f"{'tested':>8} {'hits':>8} {'violations':>10} {'min_margin':>14} {'mean_margin':>14} {'gain':>14}"
    row = (f"{summary.tested:>8d} {summary.hypothesis_hits:>8d} {summary.violations:>10d} "
           f"{_cell(d['min_margin']):>14} {_cell(d['mean_margin']):>14} "
           f"{_cell(d['tightness_gain']):>14}")
    _print(payload, args.json, [head, row])
    return 0


def _cell(v) -> str:
    return "-" if v is None else format_float(v)


def cmd_figure(args) -> int:
    text = figure_csv(args.which)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    print(f"wrote {args.out} ({text.count(chr(10)) - 1} rows)")
    return 0


def cmd_examples(args) -> int:
    params = EXAMPLE_PARAMS[args.which]
    state = gen_schmidt_state(params)
    if args.which == "ex1":
        top, ab, ac = tripartite_triple(state, "concurrence")
        adm = admissible_monogamy(top, ab, ac, 2.0)
        payload = {
            "example": "ex1",
            "C_A|BC": top, "C_AB": ab, "C_AC": ac,
            "u_max": adm.u_extreme, "h_min": adm.h_min,
        }
        lines = [
            f"C_A|BC = {format_float(top)}",
            f"C_AB   = {format_float(ab)}",
            f"C_AC   = {format_float(ac)}",
            f"u_max  = {format_float(adm.u_extreme)}",
            f"h_min  = {format_float(adm.h_min)}",
        ]
    else:
        top, ab, ac = tripartite_triple(state, "crenoa")
        adm = admissible_polygamy(top, ab, ac, 2.0)
        payload = {
            "example": "ex2",
            "Na_A|BC": top, "Na_AB": ab, "Na_AC": ac,
            "u_min": adm.u_extreme, "h_min": adm.h_min,
        }
        lines = [
            f"Na_A|BC = {format_float(top)}",
            f"Na_AB   = {format_float(ab)}",
            f"Na_AC   = {format_float(ac)}",
            f"u_min   = {format_float(adm.u_extreme)}",
            f"h_min   = {format_float(adm.h_min)}",
        ]
    _print(payload, args.json, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monolab",
        description="entanglement measures and parameterized sharing-bound checks "
                    "for small multi-qubit states",
    )
    from . import __version__

    parser.add_argument("--version", action="version", version=f"monolab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", help="compute measures on a described state")
    _add_state_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("check", help="run a tripartite bound check")
    p.add_argument("mode", choices=(MONOGAMY, POLYGAMY))
    _add_state_flags(p)
    p.add_argument("--measure", choices=sorted(MEASURE_PROFILES))
    p.add_argument("--alpha", type=float, default=2.0, help="monogamy exponent")
    p.add_argument("--gamma", type=float, default=2.0, help="monogamy base exponent")
    p.add_argument("--beta", type=float, default=2.0, help="polygamy exponent")
    p.add_argument("--delta", type=float, default=2.0, help="polygamy base exponent")
    p.add_argument("--h", type=float, default=None,
                   help="slack parameter in [0, 1]; defaults to the admissible minimum")
    p.add_argument("--u", type=float, default=None,
                   help="slack parameter; defaults to the admissible extreme")
    p.add_argument("--case", choices=(SPLIT_ON_C, SPLIT_ON_B), default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="randomized bound verification sweep")
    p.add_argument("--system", choices=verify.SYSTEMS, required=True)
    p.add_argument("--measure", choices=sorted(MEASURE_PROFILES), required=True)
    p.add_argument("--n", type=int, default=1000, help="number of states")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--base", type=float, default=2.0, help="base exponent")
    p.add_argument("--exponents", default="2", help="comma list of outer exponents")
    p.add_argument("--rank", type=int, default=2, help="rank for mixed-state systems")
    p.add_argument("--h", type=float, default=None, help="override the per-state h")
    p.add_argument("--u", type=float, default=None, help="override the per-state u")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="write a figure grid as CSV")
    p.add_argument("which", choices=("fig1", "fig2", "fig3"))
    p.add_argument("--out", required=True, metavar="PATH")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("examples", help="print a built-in worked example")
    p.add_argument("which", choices=("ex1", "ex2"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_examples)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MonolabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
