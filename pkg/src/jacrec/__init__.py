"""Recursion-based evaluation of weighted Jacobi product integrals.

Subpackage map:

- ``scalars``    exact-rational vs float64 scalar modes
- ``numerics``   Pochhammer/Beta primitives and Gauss-Legendre rules
- ``jacobi``     (integrated) Jacobi/Legendre evaluation + identity catalog
- ``hyper``      terminating hypergeometric / Kampé de Fériet machinery
- ``relations``  the certified contiguous-relation catalog
- ``integrals``  the weighted product integral in all its forms
- ``tables``     recursive table-filling engines
- ``fem``        triangle basis functions and mass-matrix assembly
- ``cli``        command-line front end (verify / gram / assemble / bench)
"""

__version__ = "0.1.0"
