"""Numerical laboratory for the semilinear Tricomi equation u_tt - t^(2m) Lap u = |u_t|^p."""

__version__ = "0.1.0"
