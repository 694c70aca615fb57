"""Exact computations with commutative algebras and the Loday functor on finite surjections."""

__version__ = "0.1.0"
