"""Desk-scale certificates for special cubic fourfolds containing rational surfaces.

Exact linear algebra over a prime field reconstructs, for each blow-up of the
plane in the reference table, the dimensions of ``H^0(I_S(3))``,
``H^0(N_{S/P^5})`` and ``H^0(N_{S/X})``, together with the lattice arithmetic
of the divisors ``C_d``.
"""

from .arith import DEFAULT_Q, PrimeField
from .pipeline import Options, VerificationReport, verify_all, verify_row
from .tables import TABLE

__all__ = ["DEFAULT_Q", "PrimeField", "Options", "VerificationReport", "verify_all", "verify_row", "TABLE"]
__version__ = "0.1.0"
