"""Bivariate stochastic dominance tests package."""

__app_name__ = "Bivariate Dominance"
__version__ = "0.1.0"
