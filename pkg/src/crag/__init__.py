"""Exact invariants of real semialgebraic sets and complex varieties."""
