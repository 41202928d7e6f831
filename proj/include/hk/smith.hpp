#pragma once

#include <optional>
#include <vector>

#include "hk/int_matrix.hpp"

namespace hk {

/// U * A * V = S with U, V unimodular and S diagonal, d_1 | d_2 | ... .
///
/// The inverses of U and V are tracked alongside so that callers can move
/// between the original and the diagonal coordinates without a second
/// elimination.
struct SmithDecomposition {
  IntMatrix u;
  IntMatrix s;
  IntMatrix v;
  IntMatrix u_inverse;
  IntMatrix v_inverse;

  /// Number of nonzero diagonal entries.
  std::size_t rank() const;
  /// The diagonal d_1, ..., d_min(rows, cols), zeros included.
  std::vector<Integer> diagonal() const;
};

/// Deterministic Smith normal form. Pivots on the entry of smallest nonzero
/// absolute value, ties broken by lowest row then lowest column.
SmithDecomposition smith_normal_form(const IntMatrix& a);

/// The diagonal of smith_normal_form(a) without building U or V.
std::vector<Integer> smith_diagonal(const IntMatrix& a);

/// Solves A x = b over the integers for many right-hand sides against one SNF.
class LatticeSolver {
 public:
  explicit LatticeSolver(const IntMatrix& a);

  std::optional<IntVector> solve(const IntVector& b) const;
  bool contains(const IntVector& b) const { return solve(b).has_value(); }

 private:
  std::size_t rows_;
  std::size_t cols_;
  SmithDecomposition snf_;
  std::size_t rank_;
};

/// Some integer x with A x = b, or nullopt when none exists.
std::optional<IntVector> lattice_solve(const IntMatrix& a, const IntVector& b);

/// True iff b lies in the integer column span of A.
bool in_column_span(const IntMatrix& a, const IntVector& b);

/// Columns form a Z-basis of { x in Z^n : A x = 0 }.
IntMatrix integer_kernel(const IntMatrix& a);

/// Columns form a Z-basis of the lattice spanned by the columns of A.
IntMatrix column_space_basis(const IntMatrix& a);

}  // namespace hk
