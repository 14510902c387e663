"""Exact computational models of Heisenberg p-groups and their Weil representations.

Everything is computed over the cyclotomic field Q(zeta_N) with N = lcm(4, p),
using exact rational arithmetic throughout.  The subpackages split along the
main objects:

- ``scalar``       exact cyclotomic numbers, roots of unity, Gauss sums
- ``linalg``       small exact matrices and a batched integer kernel for sweeps
- ``symplectic``   symplectic spaces over F_p, polarizations, Sp(W) and friends
- ``heisenberg``   the group W x| F_p, special isomorphisms, involutions
- ``reps``         Heisenberg representations, invariant forms, Hom dimensions
- ``weil``         the Weil lift of a Heisenberg representation to Sp x| H
- ``mackey``       induced representations and twisted-involution bookkeeping
                   for generic finite groups given by multiplication tables
- ``prounipotent`` square roots and vanishing first cohomology in congruence
                   subgroups of GL_n(Z/p^K)
- ``cli``          the ``heisweil`` command-line driver and verification suites
"""

from heisweil.scalar import CycNumber, gauss_sum, root_of_unity

__all__ = ["CycNumber", "gauss_sum", "root_of_unity"]
