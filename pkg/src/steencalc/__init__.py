"""Exact mod-p Steenrod operations on Chow rings, mu_p-torsors and Milnor K residues."""

__version__ = "0.1.0"
