"""Split-prime root statistics, root relation lattices and exact domain volumes."""

__version__ = "0.1.0"
