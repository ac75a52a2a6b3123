"""Cubic residues through the Eisenstein integers Z[w]."""
