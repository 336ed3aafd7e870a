#pragma once

#include <complex>

#include <Eigen/Dense>

namespace acp {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// operator_norm(AB - BA). Throws DimensionMismatch for unequal shapes.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

/// Smallest singular value.
double min_singular_value(const ComplexMatrix& a);

/// ||A - A*||.
double hermitian_defect(const ComplexMatrix& a);

/// ||A*A - AA*||.
double normality_defect(const ComplexMatrix& a);

ComplexMatrix hermitian_part(const ComplexMatrix& a);

void require_square(const ComplexMatrix& a, const char* what);
void require_finite(const ComplexMatrix& a, const char* what);

}  // namespace acp
