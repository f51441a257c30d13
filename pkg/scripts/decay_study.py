"""Remainder of the truncated expansion against n, one CSV block per order P.

Writes CSV suitable for a log-log plot of |residual| against n and prints the
fitted slopes next to the expected -(P+1).

    python scripts/decay_study.py --name zn-norm --orders 2 4 6 8 --grid 8 16 32 64 128
"""
import argparse
import csv
import sys
from dataclasses import dataclass, field

from intasym.expansion import expansion_coefficients
from intasym.registry import registry_names, registry_spec
from intasym.verify import decay_check


@dataclass
class DecayConfig:
    name: str = "zn-norm"
    orders: list = field(default_factory=lambda: [2, 4, 6, 8])
    grid: list = field(default_factory=lambda: [16, 32, 64, 128])
    precision: int = 256


def run(cfg: DecayConfig, out):
    spec = registry_spec(cfg.name, orders=max(cfg.orders), precision=cfg.precision)
    result = expansion_coefficients(spec)
    writer = csv.writer(out)
    writer.writerow(["P", "n", "residual", "error_bound"])
    slopes = {}
    for P in cfg.orders:
        report = decay_check(spec, P, cfg.grid, expansion=result)
        slopes[P] = report.fitted_slope
        for n, r in zip(report.n_grid, report.residuals):
            writer.writerow([P, n, spec.ctx.nstr(r.value, 20), spec.ctx.nstr(r.error, 3)])
    for P, s in slopes.items():
        print(f"P={P}: fitted slope {s:.3f}, expected {-(P + 1)}", file=sys.stderr)


def main():
    cfg = DecayConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--name", default=cfg.name, choices=registry_names())
    ap.add_argument("--orders", type=int, nargs="+", default=cfg.orders)
    ap.add_argument("--grid", type=int, nargs="+", default=cfg.grid)
    ap.add_argument("--precision", type=int, default=cfg.precision)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()
    cfg = DecayConfig(args.name, args.orders, args.grid, args.precision)
    if args.out == "-":
        run(cfg, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            run(cfg, fh)


if __name__ == "__main__":
    main()
