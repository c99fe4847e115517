"""Symbol functions, RUM spectra and chi-symmetric flexes for frameworks
with a discrete abelian symmetry group."""

from .coboundary import CoboundaryMatrix, coboundary_finite, coboundary_window, operator_norm_estimate
from .framework import (
    BlockPair,
    FrameworkError,
    Representation,
    SymmetricFramework,
    build_direction_length,
    build_euclidean,
    build_explicit,
    build_l2q,
    directional_derivative_oracle,
    validate_equivariance,
)
from .gain_graph import EdgeOrbit, GainGraph, Window, degree_check, expand_window, validate_gain_graph
from .groups import (
    Character,
    GroupElement,
    GroupSpec,
    char_eval,
    elem_add,
    elem_neg,
    enumerate_torsion_dual,
    sample_dual_grid,
)
from .io import load_fixture, parse_character, parse_framework, parse_framework_file, serialize_framework
from .numerics import kernel_basis, rank_with_tol, singular_multiset_equal, svd
from .rum import FlexField, SpectrumSample, build_flex, rum_spectrum, spectrum_scan_refine, verify_flex
from .symbol import SymbolPolynomial, block_diagonalize, eval_symbol, fourier_coefficients, orbit_matrix

__version__ = "0.1.0"
