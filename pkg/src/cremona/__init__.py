"""Exact monomial Cremona models for quotients of hypersurfaces by diagonal
finite abelian group actions, with finite-field verification machinery."""

from .action import DiagonalAction, InvariantHypersurface, subgroup_index
from .coeffs import Cyclotomic, FpElem, ParamCoeff, root_embed, specialize
from .lang import ParseError, ProblemSpec, parse_input, parse_poly, render_spec
from .pipeline import (CremonaChain, CremonaStep, MonomialBasis, RationalMap,
                       chain_parametrization, compose_maps, cremona_step,
                       hnf_basis_for, linear_witness, parametrize_linear,
                       residual_action, search_basis, validate_basis)
from .poly import LaurentPoly, poly_str
from .scenarios import list_scenarios, run_all, run_scenario
from .verify import (FiberHistogram, ScanReport, default_prime, fiber_histogram,
                     on_variety, quotient_fiber_check, smooth_scan)

__all__ = [
    "Cyclotomic", "FpElem", "ParamCoeff", "root_embed", "specialize",
    "LaurentPoly", "poly_str",
    "DiagonalAction", "InvariantHypersurface", "subgroup_index",
    "MonomialBasis", "CremonaStep", "CremonaChain", "RationalMap",
    "cremona_step", "residual_action", "linear_witness", "parametrize_linear",
    "compose_maps", "chain_parametrization", "validate_basis", "hnf_basis_for",
    "search_basis",
    "ScanReport", "FiberHistogram", "smooth_scan", "on_variety",
    "fiber_histogram", "quotient_fiber_check", "default_prime",
    "ParseError", "ProblemSpec", "parse_input", "parse_poly", "render_spec",
    "list_scenarios", "run_scenario", "run_all",
]
