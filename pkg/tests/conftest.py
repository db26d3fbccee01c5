"""Shared test helpers: independent finite-difference oracles and stub
material models.  The difference stencils here are deliberately local to
the tests so they stay independent of the package's own implementation.
"""

from dataclasses import dataclass


def fd(f, x, h):
    """Central first difference."""
    return (f(x + h) - f(x - h)) / (2.0 * h)


def fd2(f, x, h):
    """Central second difference."""
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)


@dataclass(frozen=True)
class ConstantIndexModel:
    """Material stub with a flat index and injectable derivatives."""

    n: float
    dndt: float = 0.0
    d2: float = 0.0

    def index(self, lam, temp):
        return self.n

    def dn_dT(self, lam, temp):
        return self.dndt

    def d2n_dlambda2(self, lam, temp, mode="exact"):
        return self.d2
