"""Spectral computations for the chiral model of twisted bilayer graphene in an in-plane field."""
__version__ = "0.1.0"
