"""
Test suite for emweights.
"""
