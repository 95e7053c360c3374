"""Command-line sweeps emitting CSV.

Example::

    python3 -m iqirelay --metric op --sweep pb_db:0:40:2 --modes mc,analytic --trials 100000
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import warnings
from dataclasses import replace

from . import __version__
from .analytic import closed_forms as th
from .channel import FixedCee
from .config import MODES, SWEEP_VARS, ConfigDocument, ConfigError, ExperimentSpec, Sweep, apply_sweep, load_config
from .link import SCHEMES
from .mc import simulate

CSV_VERSION = "iqirelay-sweep/1"
COLUMNS = ("metric", "scheme", "mode", "sweep_var", "sweep_value", "value", "stderr", "trials", "seed", "y_nodes", "note")

# note values
CEILING = "sinr-ceiling"
SILENT = "no-beacon-power"

EXIT_CONFIG = 2
EXIT_STRICT = 3


def _fmt(x) -> str:
    if x is None or x == "":
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _ceiling_note(metric: str, cfg: ConfigDocument) -> str:
    if cfg.energy.pb == 0:
        return SILENT
    k = th.constants(cfg.network, cfg.energy, cfg.impairments(), cfg.r_th)
    hops = {"op": (k.sr, k.rd), "ip_direct": (k.se,), "ip_relay": (k.re,)}[metric]
    return "" if all(h.valid for h in hops) else CEILING


def _row_labels(spec: ExperimentSpec):
    if spec.metric == "ip_direct":
        return ["direct"]
    if spec.metric == "ip_relay" and isinstance(spec.ip_relay_tap, int):
        return [f"relay{spec.ip_relay_tap}"]
    return list(spec.schemes)


def _analytic(metric, label, cfg, y):
    net, eh, iqi = cfg.network, cfg.energy, cfg.impairments()
    if metric == "op":
        return th.op(label, net, eh, iqi, cfg.r_th, quad=y)
    if metric == "ip_direct":
        return th.ip_direct(net, eh, iqi, cfg.r_th, quad=y)
    # every relay's broadcast link has the same statistics
    return th.ip_relay(net, eh, iqi, cfg.r_th, quad=y)


def _evaluate_point(spec: ExperimentSpec, cfg: ConfigDocument, value):
    labels = _row_labels(spec)
    note = _ceiling_note(spec.metric, cfg)
    mc_res = None
    if "mc" in spec.modes:
        if spec.metric == "ip_relay":
            taps = (spec.ip_relay_tap,) if isinstance(spec.ip_relay_tap, int) else tuple(spec.schemes)
        else:
            taps = ()
        mc_res = simulate(cfg.network, cfg.energy, cfg.impairments(), cfg.r_th, spec.mc, relay_taps=taps)

    rows = []
    for label in labels:
        for mode in MODES:
            if mode not in spec.modes:
                continue
            row = dict.fromkeys(COLUMNS, "")
            row.update(metric=spec.metric, scheme=label, mode=mode, sweep_var=spec.sweep.var, sweep_value=value, note=note)
            if mode == "mc":
                if spec.metric == "op":
                    key = ("op", label)
                elif spec.metric == "ip_direct":
                    key = ("ip", "direct")
                else:
                    key = ("ip", spec.ip_relay_tap if isinstance(spec.ip_relay_tap, int) else label)
                est = mc_res[key]
                row.update(value=est.p_hat, stderr=est.stderr, trials=est.trials, seed=est.seed)
            elif mode == "analytic":
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", th.NumericalExcursionWarning)
                    row.update(value=_analytic(spec.metric, label, cfg, spec.y_nodes), y_nodes=spec.y_nodes)
            else:
                if spec.metric != "op" or not isinstance(cfg.network.cee, FixedCee):
                    row.update(note=(note + ";" if note else "") + "asymptote-undefined")
                else:
                    row.update(value=th.op_asymptotic(label, cfg.network, cfg.energy, cfg.impairments(), cfg.r_th))
            rows.append(row)
    return rows


def run_experiment(spec: ExperimentSpec, config: ConfigDocument) -> list:
    """Evaluate every (sweep point, scheme, mode) cell and return CSV rows as dicts."""
    rows = []
    for value in spec.sweep.points():
        cfg = apply_sweep(config, spec.sweep.var, value)
        rows.extend(_evaluate_point(spec, cfg, value))
    return rows


def write_csv(rows, stream) -> None:
    stream.write(f"# {CSV_VERSION}\n")
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in COLUMNS])


def to_csv(rows) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument parsing


def _sweep_arg(text: str) -> Sweep:
    parts = text.split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected VAR:START:STOP:STEP")
    var = parts[0]
    if var not in SWEEP_VARS:
        raise argparse.ArgumentTypeError(f"unknown sweep variable {var!r}; choose from {', '.join(SWEEP_VARS)}")
    try:
        start, stop, step = (float(p) for p in parts[1:])
    except ValueError:
        raise argparse.ArgumentTypeError("sweep bounds must be numbers") from None
    try:
        return Sweep(var, start, stop, step)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _list_arg(allowed):
    def parse(text: str) -> tuple:
        if text == "all":
            return tuple(allowed)
        items = tuple(t.strip() for t in text.split(",") if t.strip())
        bad = [t for t in items if t not in allowed]
        if not items or bad:
            raise argparse.ArgumentTypeError(f"expected a comma list from {', '.join(allowed)}")
        return items

    return parse


def _positive_int(text: str) -> int:
    # int() rejects "1e6" on purpose: trial counts must be exact integers
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="iqirelay",
        description="Outage and intercept sweeps for wireless-powered DF relaying with I/Q imbalance.",
    )
    p.add_argument("--config", metavar="PATH", help="JSON configuration file")
    p.add_argument("--metric", choices=("op", "ip_direct", "ip_relay"))
    p.add_argument("--scheme", type=_list_arg(SCHEMES), metavar="LIST", help="comma list of rrs,srs,ors or 'all'")
    p.add_argument("--sweep", type=_sweep_arg, metavar="VAR:START:STOP:STEP")
    p.add_argument("--trials", type=_positive_int, metavar="N")
    p.add_argument("--seed", type=_nonneg_int, metavar="N")
    p.add_argument("--y-nodes", type=_positive_int, metavar="N", dest="y_nodes")
    p.add_argument("--out", metavar="PATH", help="CSV destination (default: standard output)")
    p.add_argument("--modes", type=_list_arg(MODES), metavar="LIST", help="comma list of mc,analytic,asymptotic")
    p.add_argument("--workers", type=_positive_int, metavar="N")
    p.add_argument("--chunk", type=_positive_int, metavar="N")
    p.add_argument("--strict", action="store_true", help="exit 3 if any point hits the SINR ceiling")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def resolve(args) -> tuple[ExperimentSpec, ConfigDocument]:
    """Merge the config file (if any) with command-line overrides."""
    cfg = load_config(args.config) if args.config else ConfigDocument()
    spec = cfg.experiment
    mc = spec.mc
    mc_changes = {k: getattr(args, k) for k in ("trials", "seed", "workers", "chunk") if getattr(args, k) is not None}
    if mc_changes:
        mc = replace(mc, **mc_changes)
    changes = {"mc": mc}
    for name, attr in (("metric", "metric"), ("schemes", "scheme"), ("sweep", "sweep"), ("modes", "modes"), ("y_nodes", "y_nodes"), ("output", "out")):
        v = getattr(args, attr)
        if v is not None:
            changes[name] = v
    try:
        spec = replace(spec, **changes)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return spec, cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec, cfg = resolve(args)
        rows = run_experiment(spec, cfg)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"iqirelay: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if spec.output:
        with open(spec.output, "w", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    if args.strict and any(CEILING in r["note"] for r in rows):
        print("iqirelay: SINR threshold reaches the IQI ceiling at some sweep points", file=sys.stderr)
        return EXIT_STRICT
    return 0


if __name__ == "__main__":
    sys.exit(main())
