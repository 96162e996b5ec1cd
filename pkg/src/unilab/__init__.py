"""unilab: construction and discontinuity analysis of uninorms, t-norms and t-conorms."""

__version__ = "0.1.0"
