"""Print a_0, a_2..a_P with exact zeta forms for registry entries.

    python scripts/coefficient_tables.py --names zn-norm hermite-lognormal --orders 8
"""
import argparse
from dataclasses import dataclass, field

from intasym.expansion import expansion_coefficients
from intasym.registry import registry_names, registry_spec


@dataclass
class TableConfig:
    names: list = field(default_factory=registry_names)
    orders: int = 8
    precision: int = 256
    digits: int = 30


def print_table(name: str, cfg: TableConfig):
    result = expansion_coefficients(registry_spec(name, orders=cfg.orders, precision=cfg.precision))
    ctx = result.spec.ctx
    print(f"== {name}  (q={result.spec.q}, w={result.spec.w})")
    print(f"  a_0 = {ctx.nstr(result.a(0).value, cfg.digits)}  [{result.a0_source}]")
    for c in result.coefficients:
        form = c.zeta_form.render() if c.zeta_form else "-"
        print(f"  a_{c.p} = {ctx.nstr(c.value.value, cfg.digits):>{cfg.digits + 8}}   {form}")
    for w in result.warnings:
        print(f"  warning: {w}")


def main():
    cfg = TableConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--names", nargs="+", default=cfg.names, choices=registry_names())
    ap.add_argument("--orders", type=int, default=cfg.orders)
    ap.add_argument("--precision", type=int, default=cfg.precision)
    args = ap.parse_args()
    cfg = TableConfig(args.names, args.orders, args.precision)
    for name in cfg.names:
        print_table(name, cfg)


if __name__ == "__main__":
    main()
