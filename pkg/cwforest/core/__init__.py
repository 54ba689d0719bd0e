"""Core modules - rationals, matrices, forests and verification"""

from cwforest.core.forest import ForestConfig, TreeAddress
from cwforest.core.matrix_monoid import Mat2, PathWord
from cwforest.core.rational import Rational, make_rational

__all__ = ["ForestConfig", "Mat2", "PathWord", "Rational", "TreeAddress", "make_rational"]
