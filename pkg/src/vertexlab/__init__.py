"""Exact algebra for the fused nineteen-vertex model and its spin-one chain.

The package is split into small modules:

* ``exact``     scalar ring, Laurent and integer polynomials, determinants, pfaffians
* ``vertex``    R-matrices, fusion, boundary vectors and local relations
* ``transfer``  monodromy and transfer matrices, Hamiltonians, spectra
* ``sov``       height basis and the special zero-energy vectors
* ``partition`` vertex-model partition functions and their oracles
* ``asm``       alternating sign matrix enumeration and generating functions
* ``cli``       command line entry point
"""

__version__ = "0.1.0"
