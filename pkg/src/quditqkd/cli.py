"""Command-line front end: figure data, thresholds, link analysis, simulation.

Exit codes: 0 success, 2 usage error, 3 no secure regime.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import math
import sys

import numpy as np

from . import attacks, mub, realistic, security, sim

__all__ = ["main", "fmt", "EXIT_OK", "EXIT_USAGE", "EXIT_INSECURE"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INSECURE = 3

DEFAULT_FIG1_DIMS = (2, 3, 4, 8, 16)
DEFAULT_FIG3_DIMS = (2, 3, 4, 8)


class UsageError(Exception):
    pass


class InsecureError(Exception):
    pass


def fmt(x) -> str:
    """Decimal string with 12 significant digits."""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return str(x)
    return format(x, "#.12g")


def _num(x):
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return int(x)
    x = float(x)
    return float(format(x, ".12g")) if math.isfinite(x) else str(x)


def _dims(text: str) -> list[int]:
    try:
        dims = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not dims or any(d < 2 for d in dims):
        raise argparse.ArgumentTypeError("dimensions must be integers >= 2")
    return dims


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg_float(text: str) -> float:
    v = float(text)
    if not (v >= 0.0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {text}")
    return v


def _bases_for(N: int, M: int | None) -> int:
    M = N + 1 if M is None else M
    if not 1 <= M <= N + 1:
        raise UsageError(f"--bases must satisfy 1 <= M <= N+1 (N={N}, M={M})")
    return M


# --- output ------------------------------------------------------------------


@contextlib.contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _emit_rows(args, columns, rows) -> None:
    with _open_out(args.out) as fh:
        if args.format == "json":
            recs = [{c: _num(v) if not isinstance(v, str) else v for c, v in zip(columns, r)} for r in rows]
            json.dump({"columns": list(columns), "rows": recs}, fh, indent=2)
            fh.write("\n")
        else:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(columns)
            for r in rows:
                w.writerow([v if isinstance(v, str) else fmt(v) for v in r])


def _emit_json(args, obj) -> None:
    with _open_out(args.out) as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


# --- subcommands ---------------------------------------------------------------


def cmd_mubs(args) -> int:
    if args.format == "csv":
        raise UsageError("mubs emits JSON only")
    fam = mub.build_mub_family(args.dim)
    ov = fam.overlaps()
    overlaps = []
    for a in range(fam.M):
        for b in range(fam.M):
            if a == b:
                continue
            for i in range(fam.N):
                for j in range(fam.N):
                    overlaps.append({"a": a, "b": b, "i": i, "j": j, "magnitude": fmt(ov[a, b, i, j])})
    doc = {
        "N": fam.N,
        "p": fam.dim.p,
        "k": fam.dim.k,
        "M": fam.M,
        "bases": [
            [[[_num(z.real), _num(z.imag)] for z in row] for row in basis]
            for basis in fam.bases
        ],
        "overlaps": overlaps,
        "expected_magnitude": fmt(1 / math.sqrt(fam.N)),
        "max_deviation": _num(fam.max_unbiasedness_error()),
    }
    _emit_json(args, doc)
    return EXIT_OK


def cmd_fig1(args) -> int:
    cols = ("figure", "N", "M", "e_B", "R_AB", "kind")
    rows = []
    for N in args.dims:
        M = _bases_for(N, args.bases)
        for e in np.linspace(0.0, (N - 1) / N, args.grid):
            rows.append(("fig1", N, M, float(e), security.rate_ab(N, M, float(e)).R_AB, "grid"))
        th = security.incoherent_threshold(N)
        rows.append(("fig1", N, M, th.e_max, security.rate_ab(N, M, th.e_max).R_AB, "zero_crossing"))
    _emit_rows(args, cols, rows)
    return EXIT_OK


def cmd_fig2(args) -> int:
    cols = ("figure", "N", "e_incoherent", "e_coherent", "e_symmetric_cloner")
    rows = []
    for N in mub.supported_dimensions(args.max_dim):
        rows.append((
            "fig2", N,
            security.incoherent_threshold(N).e_max,
            security.coherent_threshold(N).e_max,
            security.symmetric_cloner_error(N),
        ))
    _emit_rows(args, cols, rows)
    return EXIT_OK


def _link(args, N: int, L: float = 0.0) -> realistic.LinkParams:
    try:
        return realistic.LinkParams(
            mu=args.mu, eta_D=args.eta, alpha_db_per_km=args.alpha_db_km,
            L_km=L, p_dark=args.pdark, N=N, M=_bases_for(N, args.bases),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_fig3(args) -> int:
    cols = ("figure", "N", "M", "L_km", "QBER", "R_AB", "kind")
    exact = args.qber == "exact"
    grid = np.arange(0.0, args.max_length_km + 0.5 * args.step_km, args.step_km)
    rows = []
    insecure = []
    for N in args.dims:
        lp = _link(args, N)
        for L, q, r in realistic.rate_vs_distance(lp, grid, exact=exact):
            rows.append(("fig3", N, lp.M, L, q, r, "grid"))
        try:
            L_star = realistic.max_distance(lp, args.threshold, exact=exact)
        except realistic.NoSecureDistanceError as exc:
            insecure.append(str(exc))
            rows.append(("fig3", N, lp.M, math.nan, math.nan, math.nan, "max_distance"))
            continue
        if math.isinf(L_star):
            rows.append(("fig3", N, lp.M, L_star, 0.0, math.nan, "max_distance"))
            continue
        q = realistic.qber(lp.at(L_star), exact=exact)
        r = security.rate_ab(N, lp.M, min(q, (N - 1) / N)).R_AB
        rows.append(("fig3", N, lp.M, L_star, q, r, "max_distance"))
    _emit_rows(args, cols, rows)
    if insecure:
        for msg in insecure:
            print(f"no secure distance: {msg}", file=sys.stderr)
        return EXIT_INSECURE
    return EXIT_OK


def cmd_thresholds(args) -> int:
    cols = (
        "N", "e_incoherent", "residual_incoherent", "e_coherent", "residual_coherent",
        "e_symmetric_cloner", "F_symmetric_cloner",
    )
    rows = []
    for N in args.dims:
        inc = security.incoherent_threshold(N)
        coh = security.coherent_threshold(N)
        F_B, _ = attacks.fidelities(attacks.symmetric_cloner(N))
        rows.append((N, inc.e_max, inc.residual, coh.e_max, coh.residual,
                     security.symmetric_cloner_error(N), F_B))
    _emit_rows(args, cols, rows)
    return EXIT_OK


def cmd_link(args) -> int:
    exact = args.qber == "exact"
    lp = _link(args, args.dim, args.length_km)
    try:
        q = realistic.qber(lp, exact=exact)
    except realistic.DeadLinkError as exc:
        raise InsecureError(str(exc)) from exc
    e_max = security.threshold(lp.N, args.threshold).e_max
    rate = security.rate_ab(lp.N, lp.M, min(q, (lp.N - 1) / lp.N)).R_AB
    try:
        L_star = realistic.max_distance(lp, args.threshold, exact=exact)
    except realistic.NoSecureDistanceError:
        L_star = math.nan
    secure = q < e_max
    cols = ("N", "M", "L_km", "p_correct", "p_incorrect", "QBER", "R_AB",
            "threshold", "e_max", "max_distance_km", "secure")
    row = (lp.N, lp.M, lp.L_km, realistic.p_correct(lp), realistic.p_incorrect(lp), q, rate,
           str(security.ThresholdKind(args.threshold).value), e_max, L_star, str(secure).lower())
    _emit_rows(args, cols, [row])
    if not secure:
        print(f"link insecure: QBER {q:.6g} >= {args.threshold} threshold {e_max:.6g}", file=sys.stderr)
        return EXIT_INSECURE
    return EXIT_OK


def _attack_from_args(args, N: int):
    if args.attack == "none":
        return attacks.NoAttack()
    if args.attack == "intercept-resend":
        return attacks.InterceptResend()
    if args.beta == "symmetric":
        return attacks.Cloner(attacks.symmetric_cloner(N))
    try:
        beta = float(args.beta)
        return attacks.Cloner(attacks.cloner_from_beta(beta, N))
    except ValueError as exc:
        raise UsageError(f"--beta: {exc}") from exc


def _prediction(attack, N: int, M: int):
    if isinstance(attack, attacks.NoAttack):
        return attacks.AttackStats(0.0, 1.0, math.nan, math.log2(N), 0.0)
    if isinstance(attack, attacks.InterceptResend):
        return attacks.intercept_resend_stats(N, M)
    return attacks.cloner_stats(attack.asym)


def cmd_simulate(args) -> int:
    if args.format == "csv":
        raise UsageError("simulate emits JSON only; use --transcript for CSV")
    N = args.dim
    M = _bases_for(N, args.bases)
    attack = _attack_from_args(args, N)
    try:
        cfg = sim.ProtocolConfig(N, M, args.symbols, attack, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    stats = sim.run_protocol(cfg, keep_transcript=args.transcript is not None)
    if args.transcript is not None:
        sim.write_transcript_csv(stats.transcript, args.transcript)
    pred = _prediction(attack, N, M)
    i_ab, i_ae = sim.empirical_mutual_information(stats)
    doc = {
        "config": {"N": N, "M": M, "n_symbols": args.symbols, "attack": args.attack, "seed": args.seed},
        "observed": {
            "n_sifted": stats.n_sifted,
            "n_errors": stats.n_errors,
            "e_hat": _num(stats.e_hat),
            "i_ab_hat": _num(i_ab),
            "i_ae_hat": None if i_ae is None else _num(i_ae),
            "sifting_rate": _num(stats.n_sifted / stats.n_symbols),
        },
        "predicted": {
            "e_B": _num(pred.e_B),
            "I_AB": _num(pred.I_AB),
            "I_AE": _num(pred.I_AE),
            "sifting_rate": _num(1.0 / M),
        },
        "z": {
            "e_hat": _num(sim.z_score(stats.e_hat, pred.e_B, stats.n_sifted)),
            "sifting_rate": _num(sim.z_score(stats.n_sifted / stats.n_symbols, 1.0 / M, stats.n_symbols)),
        },
    }
    if isinstance(attack, attacks.Cloner):
        doc["config"]["alpha"] = _num(attack.asym.alpha)
        doc["config"]["beta"] = _num(attack.asym.beta)
        doc["observed"]["eve_classes"] = list(sim.eve_class_counts(stats))
    _emit_json(args, doc)
    return EXIT_OK


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    link = argparse.ArgumentParser(add_help=False)
    link.add_argument("--mu", type=_nonneg_float, default=0.1, help="mean photon number per symbol")
    link.add_argument("--eta", type=_nonneg_float, default=0.2, help="detector efficiency")
    link.add_argument("--alpha-db-km", type=_nonneg_float, default=0.2, help="fibre loss (dB/km)")
    link.add_argument("--pdark", type=_nonneg_float, default=1e-5, help="dark-count probability")
    link.add_argument("--threshold", choices=("incoherent", "coherent"), default="incoherent")
    link.add_argument("--qber", choices=("approx", "exact"), default="approx")

    bases = argparse.ArgumentParser(add_help=False)
    bases.add_argument("--bases", "-M", type=_positive_int, default=None, help="number of bases (default N+1)")

    p = argparse.ArgumentParser(prog="quditqkd", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("mubs", parents=[common], help="print a family of mutually unbiased bases")
    s.add_argument("--dim", "-N", type=int, required=True)
    s.set_defaults(func=cmd_mubs, default_format="json")

    s = sub.add_parser("fig1", parents=[common, bases], help="key rate vs Bob's error rate")
    s.add_argument("--dims", type=_dims, default=list(DEFAULT_FIG1_DIMS))
    s.add_argument("--grid", type=_positive_int, default=101, help="error-rate grid size")
    s.set_defaults(func=cmd_fig1, default_format="csv")

    s = sub.add_parser("fig2", parents=[common], help="tolerable error rates vs dimension")
    s.add_argument("--max-dim", type=int, default=32)
    s.set_defaults(func=cmd_fig2, default_format="csv")

    s = sub.add_parser("fig3", parents=[common, bases, link], help="key rate vs fibre length")
    s.add_argument("--dims", type=_dims, default=list(DEFAULT_FIG3_DIMS))
    s.add_argument("--max-length-km", type=_nonneg_float, default=150.0)
    s.add_argument("--step-km", type=_nonneg_float, default=1.0)
    s.set_defaults(func=cmd_fig3, default_format="csv")

    s = sub.add_parser("thresholds", parents=[common], help="incoherent and coherent error thresholds")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--dim", "-N", type=int, default=None)
    g.add_argument("--dims", type=_dims, default=None)
    s.set_defaults(func=cmd_thresholds, default_format="csv")

    s = sub.add_parser("link", parents=[common, bases, link], help="analyse one link")
    s.add_argument("--dim", "-N", type=int, default=2)
    s.add_argument("--length-km", type=_nonneg_float, default=0.0)
    s.set_defaults(func=cmd_link, default_format="json")

    s = sub.add_parser("simulate", parents=[common, bases], help="Monte Carlo run of the protocol")
    s.add_argument("--dim", "-N", type=int, default=2)
    s.add_argument("--attack", choices=("none", "intercept-resend", "cloner"), default="none")
    s.add_argument("--beta", default="symmetric", help="cloner beta in [0, 1], or 'symmetric'")
    s.add_argument("--symbols", type=_positive_int, default=100_000)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--transcript", default=None, help="write per-symbol CSV here")
    s.set_defaults(func=cmd_simulate, default_format="json")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if args.format is None:
        args.format = args.default_format
    if args.command == "thresholds" and args.dims is None:
        args.dims = [args.dim if args.dim is not None else 2]
    if getattr(args, "dim", None) is not None and args.dim < 2:
        print("error: --dim must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, mub.UnsupportedDimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InsecureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INSECURE


if __name__ == "__main__":
    sys.exit(main())
