"""Exact oracles and seeded generators used by tests and benchmarks."""
