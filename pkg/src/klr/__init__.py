"""Computations with KLR algebras of finite type and their standard homological theory."""

__version__ = "0.1.0"
