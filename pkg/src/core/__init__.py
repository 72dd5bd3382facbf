"""Exact polynomial arithmetic, standard bases, quotient algebras and index formulas."""
