"""Lossy rewriting, Post embedding and Hardy computations on words."""

__version__ = "0.1.0"
