"""Generalized q-Schur algebras over Q(v) with exact verification."""

from .cartan import CartanData, builtin_cartan, parse_type, simple_root, validate_cartan
from .hwmodule import HWModule, build_module, freudenthal, pair_words, tensor, tensor_power, tensor_power_support
from .present import complete, instantiate_presentation, presented_dimension
from .qarith import LaurentPoly, RationalFunction, qbinom, qint
from .schur import (
    SchurRep,
    algebra_dimension,
    assemble,
    cell_basis,
    enveloping_image_dim,
    k_elements,
    specialize,
    verify_divided,
    verify_presentation,
)

__version__ = "0.1.0"
