from .rational import RationalPoly, interpolate, OverdeterminedMismatch, DuplicateAbscissa

__all__ = ["RationalPoly", "interpolate", "OverdeterminedMismatch", "DuplicateAbscissa"]
