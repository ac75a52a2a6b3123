"""
Unit tests for the cubic residue toolkit.
Tests cover Z[w] arithmetic, characters, slope functions, residue tables and the CLI.
"""
