"""Exact arithmetic for truncated non-commutative power series."""
