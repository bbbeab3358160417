"""Controllability of undirected networks via maximum matching."""
