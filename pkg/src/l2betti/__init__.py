"""Exact Murray-von Neumann dimensions and L2-Betti numbers for
finite-dimensional tracial *-algebras, with Kuenneth-formula verification
and a small catalog of quantum-group Betti sequences."""

from .algebra import (
    AlgebraError,
    FlipIsomorphism,
    TracialAlgebra,
    algebra_from_dict,
    algebra_to_dict,
    enveloping_algebra,
    group_algebra,
    multi_matrix_algebra,
    opposite_algebra,
    tensor_algebra,
)
from .catalog import (
    BettiSequence,
    CatalogError,
    CoamenableInfinite,
    CocommutativeFinite,
    ExtendedReal,
    FiniteDimAlgebra,
    FiniteQG,
    FreeGroupDual,
    Product,
    betti_of,
    convolve,
    descriptor_from_dict,
    descriptor_to_dict,
    fixed_point_classify,
    rational_first_betti,
)
from .config import RunConfig
from .groups import cyclic_cayley, klein_cayley, product_cayley, symmetric_cayley
from .homology import (
    DEFAULT_CEILING,
    BettiResult,
    ChainComplex,
    ChainMap,
    DepthTooLarge,
    algebra_self_bimodule,
    bar_complex,
    betti_numbers,
    dim_homology,
    dim_multiplicativity_check,
    induced_homology_map,
    kuenneth_betti_check,
    kuenneth_chain_check,
    tensor_complex,
)
from .modules import (
    ModuleMap,
    PresentedMap,
    PresentedModule,
    Submodule,
    algebraic_closure,
    check_image_dim_descends_to_projective_part,
    dim_image,
    dim_image_l2,
    dim_image_l2_float,
    dim_kernel,
    dim_module,
    dim_submodule,
    hom_space,
    projective_part,
)
from .scalars import ONE, ZERO, ParseError, Scalar

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "BettiResult",
    "BettiSequence",
    "CatalogError",
    "ChainComplex",
    "ChainMap",
    "CoamenableInfinite",
    "CocommutativeFinite",
    "DEFAULT_CEILING",
    "DepthTooLarge",
    "ExtendedReal",
    "FiniteDimAlgebra",
    "FiniteQG",
    "FlipIsomorphism",
    "FreeGroupDual",
    "ModuleMap",
    "ONE",
    "ParseError",
    "PresentedMap",
    "PresentedModule",
    "Product",
    "RunConfig",
    "Scalar",
    "Submodule",
    "TracialAlgebra",
    "ZERO",
    "algebra_from_dict",
    "algebra_self_bimodule",
    "algebra_to_dict",
    "algebraic_closure",
    "bar_complex",
    "betti_numbers",
    "betti_of",
    "check_image_dim_descends_to_projective_part",
    "convolve",
    "cyclic_cayley",
    "descriptor_from_dict",
    "descriptor_to_dict",
    "dim_homology",
    "dim_image",
    "dim_image_l2",
    "dim_image_l2_float",
    "dim_kernel",
    "dim_module",
    "dim_multiplicativity_check",
    "dim_submodule",
    "enveloping_algebra",
    "fixed_point_classify",
    "group_algebra",
    "hom_space",
    "induced_homology_map",
    "klein_cayley",
    "kuenneth_betti_check",
    "kuenneth_chain_check",
    "multi_matrix_algebra",
    "opposite_algebra",
    "product_cayley",
    "projective_part",
    "rational_first_betti",
    "symmetric_cayley",
    "tensor_algebra",
    "tensor_complex",
]
