"""pattpeak - exact computation of pattern-avoiding peak functions and
their Schur Q-function expansions."""

__version__ = "1.0.0"
