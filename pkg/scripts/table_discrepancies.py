"""Compare literature coefficient values with assembly and with quadrature.

For each tabulated a_p the script estimates a_p directly from quadrature as
n^p (I_n - a_0 - sum_{j<p} a_j / n^j) - a_{p+1}/n at a large n, then reports
which candidate the numerics support.
"""
import argparse
from dataclasses import dataclass

from intasym.expansion import expansion_coefficients
from intasym.registry import registry_spec
from intasym.verify import residuals_In


@dataclass
class DiscrepancyConfig:
    n: int = 128
    precision: int = 256


def study(name: str, cfg: DiscrepancyConfig):
    spec = registry_spec(name, precision=cfg.precision)
    if not spec.published:
        return
    top = max(spec.published)
    result = expansion_coefficients(spec.with_orders(top + 1))
    ctx = spec.ctx
    print(f"== {name} at n = {cfg.n}")
    for p, (label, fn) in sorted(spec.published.items()):
        residual = residuals_In(spec.with_orders(top + 1), p - 1, [cfg.n], expansion=result)[0].value
        estimate = residual * cfg.n ** p - result.a(p + 1).value / cfg.n
        assembled, published = result.a(p).value, ctx.mpf(fn(ctx))
        verdict = "agree" if abs(assembled - published) < 1e-15 * max(1, abs(published)) else (
            "assembled" if abs(estimate - assembled) < abs(estimate - published) else "published")
        print(f"  a_{p}: published {ctx.nstr(published, 12):>18}  assembled {ctx.nstr(assembled, 12):>18}  "
              f"quadrature {ctx.nstr(estimate, 8):>14}  -> {verdict}   [{label}]")


def main():
    cfg = DiscrepancyConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=cfg.n)
    args = ap.parse_args()
    cfg = DiscrepancyConfig(n=args.n)
    for name in ("zn-norm", "hermite-lognormal", "sincos"):
        study(name, cfg)


if __name__ == "__main__":
    main()
