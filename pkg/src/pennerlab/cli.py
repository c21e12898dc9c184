"""Command-line front end.

Every subcommand emits data (CSV or JSON) meant for an external plotting
tool; nothing here renders images.  Output is deterministic: the same
config produces byte-identical files.  Precedence for settings is
command-line flags, then a flat JSON config file, then built-in
defaults.

Subcommands
-----------
zeros       scaled-polynomial zeros plus the support polyline for overlay
support     support geometry alone (endpoints and oval vertices)
density     equilibrium density sampled on both components
electro     potential / energy report for one (t, l)
partition   per-n log-magnitude sweep, both evaluation routes
fsweep      free energy F_n against its planar limit line
expansion   1/n-expansion coefficient table
euler       Euler-characteristic coefficient table
dscale      double-scaling genus series
verify      cross-checks with explicit tolerances; nonzero exit on failure
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import asympt, coupling, electro, laguerre, partition, spectral


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation: command plus every merged setting."""

    command: str
    t: float | None
    p: int | None
    q: int | None
    alpha: float | None
    r: float | None
    l: float | None
    n: int | None
    n_max: int | None
    out: str | None
    format: str
    tol: float | None


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a flat JSON object")
    return data


def _resolve(args: argparse.Namespace) -> RunConfig:
    file_cfg = _load_config_file(args.config)

    def pick(key, cast=None):
        v = getattr(args, key)
        if v is None:
            v = file_cfg.get(key)
        if v is not None and cast is not None:
            v = cast(v)
        return v

    return RunConfig(
        command=args.command,
        t=pick("t", float),
        p=pick("p", int),
        q=pick("q", int),
        alpha=pick("alpha", float),
        r=pick("r", float),
        l=pick("l", float),
        n=pick("n", int),
        n_max=pick("n_max", int),
        out=pick("out", str),
        format=pick("format", str) or "csv",
        tol=pick("tol", float),
    )


def _sequence(cfg: RunConfig) -> coupling.CouplingSequence:
    """Build the coupling family the flags describe.

    --r selects the integer-part family, --alpha the shifted one,
    otherwise the plain ratio family.  --p/--q pin t to an exact
    rational where the expansion machinery needs one.
    """
    if cfg.r is not None:
        if cfg.t is None:
            raise ValueError("the integer-part family needs --t")
        return coupling.integer_part(cfg.t, cfg.r)
    t = cfg.t
    if t is None and cfg.p is None:
        raise ValueError("give --t, or --p and --q, to fix the coupling scale")
    if cfg.alpha is not None:
        return coupling.shifted(t if t is not None else 1.0, cfg.alpha,
                                p=cfg.p, q=cfg.q)
    return coupling.thooft(t if t is not None else 1.0, p=cfg.p, q=cfg.q)


def _resolve_l(cfg: RunConfig, seq: coupling.CouplingSequence) -> float:
    if cfg.l is not None:
        return cfg.l
    fine = coupling.limit_l(seq)
    if not fine.exists:
        raise ValueError(
            "this family has no limiting fine structure; pass --l explicitly")
    return fine.l


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)


def _require_t(cfg: RunConfig) -> float:
    if cfg.t is not None:
        return cfg.t
    if cfg.p is not None and cfg.q is not None:
        return cfg.p / cfg.q
    raise ValueError("give --t, or --p and --q")


# ---------------------------------------------------------------- commands

def cmd_zeros(cfg: RunConfig) -> int:
    seq = _sequence(cfg)
    n = cfg.n if cfg.n is not None else 60
    zs = laguerre.find_zeros(laguerre.spec_for(seq, n))
    t = seq.t
    l = _resolve_l(cfg, seq)
    curve = spectral.support(t, l)
    count = int(laguerre.on_interval_mask(zs.zeros, curve.a, curve.b).sum())
    if cfg.format == "json":
        payload = {
            "n": n,
            "t": t,
            "l": l,
            "on_interval": count,
            "zeros": [[z.real, z.imag] for z in zs.zeros],
            "support": json.loads(curve.to_json()),
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", cfg)
    else:
        lines = ["kind,re,im"]
        for z in zs.zeros:
            lines.append(f"zero,{float(z.real)!r},{float(z.imag)!r}")
        lines.append(f"interval,{curve.a!r},0.0")
        lines.append(f"interval,{curve.b!r},0.0")
        for pt in curve.oval:
            lines.append(f"oval,{float(pt.real)!r},{float(pt.imag)!r}")
        _emit("\n".join(lines) + "\n", cfg)
    print(f"on-interval zeros: {count} of {n}", file=sys.stderr)
    return 0


def cmd_support(cfg: RunConfig) -> int:
    t = _require_t(cfg)
    l = cfg.l if cfg.l is not None else 1.0
    curve = spectral.support(t, l)
    if cfg.format == "json":
        _emit(curve.to_json() + "\n", cfg)
    else:
        lines = ["kind,re,im", f"interval,{curve.a!r},0.0",
                 f"interval,{curve.b!r},0.0"]
        for pt in curve.oval:
            lines.append(f"oval,{float(pt.real)!r},{float(pt.imag)!r}")
        _emit("\n".join(lines) + "\n", cfg)
    return 0


def cmd_density(cfg: RunConfig) -> int:
    t = _require_t(cfg)
    l = cfg.l if cfg.l is not None else 1.0
    curve = spectral.support(t, l)
    n = cfg.n if cfg.n is not None else 200
    if cfg.format == "json":
        rows = []
        for line in curve.csv_text(n).splitlines()[1:]:
            kind, re, im, w = line.split(",")
            rows.append({"component": kind, "re": float(re),
                         "im": float(im), "weight": float(w)})
        _emit(json.dumps(rows, indent=2) + "\n", cfg)
    else:
        _emit(curve.csv_text(n), cfg)
    return 0


def cmd_electro(cfg: RunConfig) -> int:
    t = _require_t(cfg)
    l = cfg.l if cfg.l is not None else 1.0
    rep = electro.report(t, l)
    if cfg.format == "json":
        _emit(rep.to_json() + "\n", cfg)
    else:
        lines = ["quantity,value"]
        for key, val in sorted(json.loads(rep.to_json()).items()):
            lines.append(f"{key},{val!r}")
        _emit("\n".join(lines) + "\n", cfg)
    return 0


def cmd_partition(cfg: RunConfig) -> int:
    seq = _sequence(cfg)
    n_max = cfg.n_max if cfg.n_max is not None else 60
    text = partition.sweep_csv(seq, n_max)
    if cfg.format == "json":
        rows = []
        for line in text.splitlines()[1:]:
            n, g, lp, lb, f = line.split(",")
            rows.append({"n": int(n), "g_n": float(g),
                         "logabsZ_product": float(lp),
                         "logabsZ_barnes": float(lb), "F_n": float(f)})
        _emit(json.dumps(rows, indent=2) + "\n", cfg)
    else:
        _emit(text, cfg)
    return 0


def cmd_fsweep(cfg: RunConfig) -> int:
    seq = _sequence(cfg)
    n_max = cfg.n_max if cfg.n_max is not None else 200
    n_min = cfg.n if cfg.n is not None else 1
    l = _resolve_l(cfg, seq)
    limit = asympt.planar_F(seq.t, l)
    rows = [(n, partition.free_energy_n(n, seq)) for n in range(n_min, n_max + 1)]
    if cfg.format == "json":
        payload = {"t": seq.t, "l": l, "planar_limit": limit,
                   "rows": [{"n": n, "F_n": f} for n, f in rows]}
        _emit(json.dumps(payload, indent=2) + "\n", cfg)
    else:
        lines = ["n,F_n,planar_limit"]
        for n, f in rows:
            lines.append(f"{n},{f!r},{limit!r}")
        _emit("\n".join(lines) + "\n", cfg)
    return 0


def cmd_expansion(cfg: RunConfig) -> int:
    alpha = cfg.alpha if cfg.alpha is not None else 0.0
    order = cfg.n if cfg.n is not None else 4
    if cfg.p is not None:
        if cfg.q is None:
            raise ValueError("rational t needs both --p and --q")
        if cfg.p <= cfg.q:
            raise ValueError("the expansion table with --p/--q covers t > 1")
        table = asympt.expansion_coeffs(None, alpha, order, "above_one",
                                        p=cfg.p, q=cfg.q)
    else:
        t = _require_t(cfg)
        if t >= 1.0:
            raise ValueError("t > 1 expansion needs exact --p/--q")
        table = asympt.expansion_coeffs(t, alpha, order, "below_one")
    _emit(table.to_json() + "\n", cfg)
    return 0


def cmd_euler(cfg: RunConfig) -> int:
    j_max = cfg.n if cfg.n is not None else 6
    s_max = cfg.n_max if cfg.n_max is not None else 8
    if cfg.format == "json":
        rows = [{"j": e.j, "s": e.s, "numerator": e.value.numerator,
                 "denominator": e.value.denominator}
                for e in asympt.euler_table(j_max, s_max)]
        _emit(json.dumps(rows, indent=2) + "\n", cfg)
    else:
        _emit(asympt.euler_csv(j_max, s_max), cfg)
    return 0


def cmd_dscale(cfg: RunConfig) -> int:
    if cfg.t is None or cfg.alpha is None:
        raise ValueError("dscale needs --t (scaling parameter mu) and "
                         "--alpha (expansion point tau)")
    order = cfg.n if cfg.n is not None else 6
    ds = asympt.double_scaling(cfg.t, cfg.alpha, order)
    _emit(ds.to_json() + "\n", cfg)
    return 0


# ------------------------------------------------------------------ verify

def _verify_checks(t: float, tol_override: float | None):
    """Yield (name, measured gap, tolerance) triples for the cross-check
    suite.  Every quantity is computed twice by independent routes and
    the gap between routes is what gets compared against the tolerance."""

    def tol(default):
        return default if tol_override is None else tol_override

    seqs = [coupling.thooft(5, p=5, q=2),
            coupling.integer_part(math.sqrt(3.0), 1.0 / 7.0),
            coupling.shifted(5, alpha=0.3, p=5, q=2)]
    worst = 0.0
    for seq in seqs:
        for n in range(1, 41):
            lp = partition.log_Z_product_seq(n, seq).log_abs_Z
            lb = partition.log_Z_barnes_seq(n, seq).log_abs_Z
            if math.isinf(lp) or math.isinf(lb):
                if lp != lb:
                    worst = math.inf
                continue
            worst = max(worst, abs(lp - lb) / max(1.0, abs(lb)))
    yield "partition route equality", worst, tol(1e-8)

    l = math.exp(-1.0 / 7.0)
    curve = spectral.support(t, l)
    yield ("interval charge fraction",
           abs(spectral.interval_charge(t) - (1.0 - 1.0 / t)), tol(1e-6))
    yield ("oval charge fraction",
           abs(spectral.oval_charge(curve) - 1.0 / t), tol(1e-6))

    u_closed = electro.u_interval_closed(t)
    x = 0.5 * (curve.a + curve.b)
    yield ("interval potential vs closed form",
           abs(electro.potential_U(x, curve) - u_closed), tol(1e-5))
    u_oval = electro.potential_U(curve.oval[0], curve)
    yield ("oval potential offset",
           abs(u_oval - u_closed + math.log(l)), tol(1e-4))

    ivr = electro.int_V_rho(curve)
    yield ("mean-field integral vs closed form",
           abs(ivr - electro.int_V_rho_closed(t, l)), tol(1e-5))
    e_total = electro.total_energy(t, l)
    yield ("energy route: parts",
           abs(electro.energy_from_parts(t, l, ivr, u_closed) - e_total),
           tol(1e-5))
    yield ("energy route: double counting",
           abs(electro.energy_double_counting(curve) - e_total), tol(1e-5))

    gap = max(abs(asympt.euler_char(2, 0) + asympt.Fraction(1, 240)),
              abs(asympt.euler_char(3, 0) - asympt.Fraction(1, 1008)),
              abs(asympt.euler_char(2, 1) - asympt.Fraction(1, 120)))
    yield "genus-coefficient values", float(gap), tol(0.0)

    rel = abs(asympt.planar_F(t, l) - e_total + (1.0 - 1.0 / t) * math.log(l))
    yield "planar free energy vs energy", rel, tol(1e-12)


def cmd_verify(cfg: RunConfig) -> int:
    t = cfg.t if cfg.t is not None else math.sqrt(3.0)
    report = []
    failed = False
    for name, gap, tolerance in _verify_checks(t, cfg.tol):
        ok = gap <= tolerance
        failed = failed or not ok
        report.append({"check": name, "value": gap,
                       "tolerance": tolerance, "pass": ok})
    _emit(json.dumps(report, indent=2) + "\n", cfg)
    for row in report:
        mark = "ok " if row["pass"] else "FAIL"
        print(f"{mark} {row['check']}: {row['value']:.3e} "
              f"(tol {row['tolerance']:.3e})", file=sys.stderr)
    return 1 if failed else 0


_COMMANDS = {
    "zeros": cmd_zeros,
    "support": cmd_support,
    "density": cmd_density,
    "electro": cmd_electro,
    "partition": cmd_partition,
    "fsweep": cmd_fsweep,
    "expansion": cmd_expansion,
    "euler": cmd_euler,
    "dscale": cmd_dscale,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pennerlab",
        description="Data-file laboratory for the fine structure of the "
                    "non-hermitian Penner model at large matrix size.")
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--t", type=float, help="coupling scale t")
    shared.add_argument("--p", type=int, help="numerator of exact rational t")
    shared.add_argument("--q", type=int, help="denominator of exact rational t")
    shared.add_argument("--alpha", type=float,
                        help="shift of the shifted family (dscale: tau)")
    shared.add_argument("--r", type=float,
                        help="decay rate of the integer-part family")
    shared.add_argument("--l", type=float,
                        help="fine-structure value l, overriding the family limit")
    shared.add_argument("--n", type=int,
                        help="matrix size / first n / table order")
    shared.add_argument("--n-max", dest="n_max", type=int,
                        help="last n of a sweep")
    shared.add_argument("--out", help="output path (default: stdout)")
    shared.add_argument("--format", choices=["csv", "json"],
                        help="output format (default csv)")
    shared.add_argument("--tol", type=float,
                        help="override every verification tolerance")
    shared.add_argument("--config", help="flat JSON config file")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sub.add_parser(name, parents=[shared])
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve(args)
        return _COMMANDS[cfg.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
