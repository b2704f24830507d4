// Small dense matrices over rationals and scalars.

#pragma once

#include "origami/precision.hpp"

#include <vector>

namespace origami {

using RationalMatrix = std::vector<std::vector<Rational>>;
using ScalarMatrix = std::vector<std::vector<Scalar>>;
using ScalarVector = std::vector<Scalar>;

RationalMatrix transpose(const RationalMatrix& a);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix identity_matrix(int n);
RationalMatrix to_rational(const ScalarMatrix& a);

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves a x = b by LU with partial pivoting at the precision of the entries.
ScalarVector lu_solve(ScalarMatrix a, ScalarVector b);

/// The 10x10 expansion matrix, as printed to three decimals.
RationalMatrix builtin_expansion_matrix();

}  // namespace origami
