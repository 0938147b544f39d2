"""Two-sided partial derivatives of regular and hairpin expressions,
couple NFA recognizers, and linear grammar conversions."""

__version__ = "0.1.0"
