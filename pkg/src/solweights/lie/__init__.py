from .cyclo import CycloDegree, LinearForm, UnsupportedIndex, degree_v2, phi_v2
from .series import (FamilyCollision, SchemaViolation, SeriesRow, assemble_series,
                     column_mismatches, kd_all, kd_numeric, kd_poly, total_count)
from .compare import exotic_check, owc_check

__all__ = ["CycloDegree", "LinearForm", "UnsupportedIndex", "degree_v2", "phi_v2",
           "FamilyCollision", "SchemaViolation", "SeriesRow", "assemble_series",
           "column_mismatches", "kd_all", "kd_numeric", "kd_poly", "total_count",
           "exotic_check", "owc_check"]
