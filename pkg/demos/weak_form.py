"""Weak-formulation residual of stored runs under grid refinement.

For the linear and the nonlinear equation the residual against the blow-up
test function (horizon M = 1.5) is computed at N = 1024 and 2048; the
observed order should be close to 2 (trapezoid in time).
"""

import math

from tricomi_lab import blowup, spectral


def residual(n, nonlinear, M=1.5):
    grid = spectral.make_grid(1, n, 8.0)
    data = spectral.sample_data(grid, 0.3, 1.0, amp_f=0.5)
    rec = spectral.run_until_blowup(grid, 1.0, 2.0, data, t_max=M, store_fields=True,
                                    nonlinear=nonlinear)
    tf = blowup.TestFunction(1.0, 2.0, M, 1)
    tf.check_grid(grid)
    return spectral.weak_residual(rec.trace.field_t, rec.trace.u, rec.trace.v, grid, 1.0, 2.0,
                                  data.g, tf, nonlinear=nonlinear)


def main():
    for nonlinear in (False, True):
        r1, r2 = residual(1024, nonlinear), residual(2048, nonlinear)
        order = math.log2(r1.residual / r2.residual)
        label = "nonlinear" if nonlinear else "linear"
        print(f"{label:>9}: relative {r1.relative:.2e} -> {r2.relative:.2e}, order {order:.2f}")


if __name__ == "__main__":
    main()
