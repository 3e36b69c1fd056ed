"""Desk-scale computations on free-group Cayley trees and the hyperbolic
plane: growth counts, Poincare series, critical exponents, shadows,
conformal densities and invariant random subgroups."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
