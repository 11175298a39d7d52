"""Bipartite K_{s,t}-saturation toolkit."""

__version__ = "0.1.0"
