"""Mechanised proofs that classify Pell and Pell-Lucas numbers which are
differences of two base-10 repdigits."""

__version__ = "0.1.0"
