"""Association schemes, spectral bounds, and lift-and-project certificates."""

__version__ = "0.1.0"
