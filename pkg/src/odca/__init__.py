"""Weighted one-deterministic-counter automata over the rationals."""

__version__ = "0.1.0"
