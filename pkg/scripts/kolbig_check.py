"""Residuals of the Kolbig relation between sigma and s values over a (j, k) grid."""
import argparse
from dataclasses import dataclass

from intasym.zetavals import kolbig_identity_residual


@dataclass
class KolbigConfig:
    max_weight: int = 8
    precision: int = 256


def main():
    cfg = KolbigConfig()
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-weight", type=int, default=cfg.max_weight)
    ap.add_argument("--precision", type=int, default=cfg.precision)
    args = ap.parse_args()
    cfg = KolbigConfig(args.max_weight, args.precision)
    worst = 0
    for j in range(1, cfg.max_weight):
        for k in range(1, cfg.max_weight - j + 1):
            r = kolbig_identity_residual(j, k, cfg.precision)
            worst = max(worst, abs(r.value))
            print(f"j={j} k={k}  residual {float(r.value): .3e}  bound {float(r.error):.3e}")
    print(f"max |residual| = {float(worst):.3e}")


if __name__ == "__main__":
    main()
