"""Torsion growth exponents of abelian varieties and the finite symplectic
group machinery behind them."""

__version__ = "0.1.0"
