"""Free LAnKes (n-ary Lie algebras): multilinear components, Specht modules
and the Garnir presentations that connect them."""

__version__ = "0.1.0"
