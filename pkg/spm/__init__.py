"""Sand Pile Model lattices: construction, verification and counting."""

__version__ = "1.0.0"
