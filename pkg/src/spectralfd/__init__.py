"""spectralfd: finite-difference denominator toolkit.

Contrasts three denominator paradigms for relaxation ODEs and the linear
diffusion-reaction PDE - the raw step size, denominators built from exact
physical-space sub-equations, and denominators built from exact discrete
representations in Fourier-Laplace transform space - together with the
exponential and Mittag-Leffler propagator machinery they are made of, and
an experiment harness that measures exactness, observed order, and
stability.
"""

__version__ = "0.1.0"

from . import denominators, ode_schemes, pde_solvers, propagators, specfun

__all__ = [
    "__version__",
    "specfun",
    "propagators",
    "denominators",
    "ode_schemes",
    "pde_solvers",
]
