"""zeta_forge: an arbitrary-precision laboratory for zeta and eta identities."""

__version__ = "0.1.0"
