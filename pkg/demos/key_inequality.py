"""Evaluate the blow-up functional Y(M) and its differential inequality on a stored run.

A single eps = 0.8 run (m = 1, p = 2) is stored step by step up to blow-up;
the script prints, for a geometric grid of M, both sides of the inequality
with the explicit Hoelder constant, and the smallest constant that would
make every row hold with a unit constant instead.
"""

import argparse
import math

import numpy as np

from tricomi_lab import blowup, spectral


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--eps", type=float, default=0.8)
    ap.add_argument("--points", type=int, default=8)
    args = ap.parse_args()

    grid = spectral.make_grid(1, 1024, 24.0)
    data = spectral.sample_data(grid, args.eps, 1.0, amp_g=math.e / 2)
    rec = spectral.run_until_blowup(grid, 1.0, 2.0, data, t_max=10.0, store_fields=True)
    tr = blowup.Trace(np.array(rec.trace.field_t), rec.trace.u, rec.trace.v, grid, 1.0, 2.0,
                      data.f, data.g)
    print(f"T_eps = {rec.T_eps:.4f} ({rec.status}), {len(tr.times)} stored steps")
    Ms = np.geomspace(1.05, 0.98 * rec.T_eps, args.points)
    rep = blowup.check_key_inequality(tr, Ms)
    print(f"C1 = {rep.C1:.4e}, kappa = {rep.kappa}")
    print(f"{'M':>8} {'lhs':>12} {'rhs':>12} {'constant':>10} {'margin':>10} holds")
    for r in rep.rows:
        print(f"{r.M:8.4f} {r.lhs:12.4e} {r.rhs:12.4e} {r.constant:10.3e} {r.margin:10.3e} {r.holds}")
    unit = blowup.check_key_inequality(tr, Ms, constant=1.0)
    print(f"unit constant: fraction holding {unit.fraction_holding:.2f}, "
          f"implied constant {unit.implied_constant:.1f}")


if __name__ == "__main__":
    main()
