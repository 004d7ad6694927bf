"""
Django Confcat

A Django app for finite models of configuration categories: Fin and Boxfin
combinatorics, discrete simplicial spaces over N(Fin), the pre-tensor
product, bounded conservatization and the verification pipelines that tie
them together.
"""

__version__ = "0.3.1"

# Public API exports - imported lazily to avoid Django app loading issues
__all__ = [
    "RunConfig",
    "VerificationReport",
    "VerificationRun",
    "VerificationService",
]
