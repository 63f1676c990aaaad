"""Paraorthogonal polynomials on the unit circle, GGT matrices and the
Poncelet geometry of their numerical ranges."""
from . import errors, geometry, ggt, kernels, numrange, opuc, poly, popuc, schur, wendroff
from .errors import InputError, PonceletError, SolverError
from .geometry import Ellipse, billiard_closure, closure_eccentricity, critical_feasibility, midpoint_word, steiner_foci
from .ggt import GGTMatrix, char_poly, contraction_to_verblunsky, ggt_build, head_flip
from .numrange import BoundaryCurve, boundary_sweep, support_oracle
from .opuc import UnitCircleMeasure, VerblunskyWord, szego_forward, verblunsky_from_measure, verblunsky_from_phi
from .popuc import PonceletFrame, popuc_zeros
from .schur import RationalSchurFn, blaschke, schur_algorithm, schur_params_closed_form
from .wendroff import CircularConfiguration, reconstruct_from_two_popuc, reconstruct_second_kind

__version__ = "0.1.0"
