"""Exact-arithmetic cells of critical points and their hierarchy flows."""

from .rings import (ParamPoly, SingularParameterError, XPoly, XRat,
                    log_derivative, wronskian, xpoly_gcd)
from .realization import (GradedComponent, LaurentMatrix, commutator, exp_ad_f,
                          generator, grade_project, h_diag, lambda_power,
                          shift_identities_check)
from .generation import (Cascade, NotDegreeIncreasingError, NotFertileError,
                         PolyTuple, cartan_matrix, critical_residuals,
                         degree_increasing_sequences, degree_transform,
                         elementary_generate, generate_cascade, is_fertile,
                         is_degree_increasing, master_value,
                         multistep_generate, roots_of_tuple)
from .miura import (MiuraOper, alpha_pairing, conjugated_connection, conjugator,
                    deform, dmu_dc, dmu_dc_at, dmu_dc_last_closed_form,
                    g_cascade, l_theta, miura_from_tuple, mu_at, mu_oper,
                    riccati_residual)
from .scalar_ops import (KernelReport, ScalarDiffOp, kernel_solve,
                         leading_tangent_coeff, miura_map, tangent_miura)
from .pseudo_diff import PseudoDiffOp, binomial_series_coeff, kdv_rhs, pdo_root
from .flows import (GammaExtraction, ShapeReport, VerificationError,
                    cell_flow_report, diagonal_shape, field_difference_shape,
                    gamma_extract, gamma_fields_commute, kdv_intertwining_check,
                    mkdv_field_at, mkdv_field_symbolic, tangency_solve_at,
                    verify_flow_vanishes)

__all__ = [name for name in dir() if not name.startswith("_")]
