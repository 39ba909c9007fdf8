"""Proof search for MLL, PLL and BI driven by Boolean constraints on how
side formulas are distributed across multiplicative branches."""

from .formula import Formula, FormulaError, Logic, format_formula, parse_formula, parse_sequent

__version__ = "0.1.0"

__all__ = ["Formula", "FormulaError", "Logic", "format_formula", "parse_formula", "parse_sequent"]
