"""
Command-line surface: tor, toric, strata, group, ss, selftest.
"""
