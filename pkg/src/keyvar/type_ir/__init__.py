"""Type IR equations and verification checks."""
