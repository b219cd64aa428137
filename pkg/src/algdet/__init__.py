"""Exact determinants over finite-dimensional algebras, and the gadget
reduction showing where they are hard."""

from .exactfield import GF, QQ, FieldSpec, FieldValue, parse_field
from .algebra import (Algebra, AlgebraElement, AlgMatrix, diagonal, direct_sum,
                      matrix_algebra, quotient, strictly_upper, tensor_product,
                      upper_triangular)

__version__ = "0.1.0"
