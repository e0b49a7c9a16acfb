"""Parikh automata and their variants: constrained, affine, on letters, and
reversal-bounded counter machines, with the semilinear machinery behind them."""

__version__ = "0.1.0"
