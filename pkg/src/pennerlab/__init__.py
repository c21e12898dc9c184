"""Numerical laboratory for the two-component eigenvalue structure of the
non-hermitian Penner model at large matrix size.

Modules:
    specfun    log-scale special functions (gamma, Barnes G, Clausen)
    coupling   coupling sequences and their limiting fine-structure parameter
    laguerre   saddle points as zeros of generalized Laguerre polynomials
    spectral   limiting support: interval, oval level set, densities
    electro    electrostatic potentials and energy of the limit measure
    partition  exact partition function by product and Barnes-G routes
    asympt     free-energy asymptotics, oscillatory corrections, genus ladder
    cli        command-line front end (console script ``pennerlab``)
"""

__version__ = "0.1.0"

__all__ = [
    "specfun",
    "coupling",
    "laguerre",
    "spectral",
    "electro",
    "partition",
    "asympt",
    "cli",
]
