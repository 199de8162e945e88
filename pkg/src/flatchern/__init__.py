"""Equivariant Chern character currents on flat tori."""

from .scalars import QI, TAU, TAU_NUMERIC, TauPoly
from .clifford import GammaSet, Vielbein, build_gammas, kappa, quantize, supertrace, vielbein
from .forms import (
    EquivariantForm,
    TrigPolyForm,
    dga_differential,
    equivariant_product,
    exterior_d,
    wedge,
)
from .torus import (
    LatticeMode,
    TorusGeometry,
    dirac_mode,
    heat_weight,
    theta_trace,
    torus_geometry,
    truncate_lattice,
)
from .simplex import simplex_heat_integral, simplex_heat_integral_batch
from .chains import (
    Chain,
    SignConvention,
    basis_words,
    chain_from_json,
    chain_restriction_integral,
    chain_to_json,
    chain_word,
    connes_B,
    dga_tensor_extension,
    entire_norm,
    hochschild_b,
    integrate_top,
    restrict_to_constants,
    slot_form_degree,
    solve_cocycles,
    total_differential,
    unit_slot,
    word_degree,
)

__version__ = "0.1.0"
