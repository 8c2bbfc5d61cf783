"""Orthogonal and Sobolev orthogonal polynomials on the conic surface.

Modules
-------
jacobi          Jacobi polynomials, normalizations, negative parameters
jacobi_sobolev  the antiderivative family ``J_n`` and its Sobolev inner product
sphere          real spherical harmonics and sphere quadrature (d = 2, 3)
quadrature      Gauss-Jacobi rules and the cone product rule
cone            bases, norms and inner products on the cone
projection      Fourier coefficients, projections, near-best operators
diffop          the operator ``D_gamma`` and its eigenfunctions
cli             verification suites with CSV/JSON reports
"""
from .cone import (BasisIndex, ConeFunction, ConeParams, ConePoint, ModalFunction, basis_eval,
                   basis_function, basis_indices, basis_norm, cone_dim, gram_matrix, ordinary_ip,
                   random_polynomial, sample_panel, sobolev_basis_eval, sobolev_basis_norm,
                   sobolev_ip_cone)
from .diffop import apply_D, eigen_check, eigenspace_U, verify_D_gamma_lemma, z_coefficients
from .exceptions import (ApexEvaluationError, ConicPolyError, DegenerateParameterError,
                         DegreeTooSmallError, DimensionUnsupportedError, IndexRangeError,
                         OffConeError, ParameterRangeError)
from .jacobi import jacobi_constants, jacobi_eval
from .jacobi_sobolev import J_closed_form_eval, J_eval, SobolevParams1D, sobolev_ip_1d
from .projection import (CoefficientTable, CutoffFunction, error_table, fourier_coeffs, project,
                         q_near_best, sobolev_fourier_coeffs, sobolev_project_integral)
from .quadrature import cone_quadrature, gauss_jacobi
from .sphere import harmonic_eval, solid_harmonic_eval, sphere_quadrature

__version__ = "0.1.0"
