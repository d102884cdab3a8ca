"""Locality, encoded CNOT gadgets and erasure attacks for binary linear codes."""

from .errors import (CapacityError, CompilationError, ConstructionError, CorruptionError,
                     DimensionError, FtlocalError, GadgetPreconditionError,
                     LocalityContradiction)
from .f2core import (NOT_DECODABLE, BitVector, ErasureWord, LinearCode, NotDecodable,
                     distance_bruteforce, encode, erase, ideal_decode, inner_product)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BitVector", "ErasureWord", "LinearCode", "NOT_DECODABLE", "NotDecodable",
    "distance_bruteforce", "encode", "erase", "ideal_decode", "inner_product",
    "CapacityError", "CompilationError", "ConstructionError", "CorruptionError",
    "DimensionError", "FtlocalError", "GadgetPreconditionError", "LocalityContradiction",
]
