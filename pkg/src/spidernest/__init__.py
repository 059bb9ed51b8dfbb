"""Phase polynomials, triorthogonal matrices, spider-nest certificates and transversal D3 gates."""

from .bitmat import BitMatrix, column_product, kernel_basis, mat_mul, parse_matrix
from .circuits import Circuit, circuits_equivalent, extract_phase_data, parse_circuit
from .css import (CssCode, LogicalGate, TransversalOp, build_nhat, check_transversal,
                  codeword_support, new_code, oracle_transversal, solve_transversal, transversality_matrix,
                  transversal_generators)
from .nests import NestCertificate, b_matrix, decompose_identity, monomial_nest, nest_matrix, verify_certificate
from .phasepoly import (GateClass, MonomialPolynomial, PhasePolynomial, classify, equal, evaluate,
                        from_rows, fuse, oracle_phases, to_monomial)
from .triortho import (IndicatorPolynomial, RMCode, clifford_correction, degree_check, gadget_indicator,
                       indicator_polynomial, is_semi_triorthogonal, is_triorthogonal, rm_dual_verify,
                       rm_generator)
from .zring import KernelGenerators, Z8Matrix, howell_form, kernel_generators, solve_linear

__version__ = "0.1.0"
