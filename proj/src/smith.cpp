#include "hk/smith.hpp"

#include <algorithm>

#include "hk/error.hpp"

namespace hk {

namespace {

// Applies every elementary operation to S and, when tracking, keeps U, U^-1,
// V, V^-1 in sync.
class SmithWorker {
 public:
  SmithWorker(const IntMatrix& a, bool track) : s_(a), track_(track) {
    if (track_) {
      u_ = uinv_ = IntMatrix::identity(a.rows());
      v_ = vinv_ = IntMatrix::identity(a.cols());
    }
  }

  SmithDecomposition run() {
    const std::size_t m = s_.rows();
    const std::size_t n = s_.cols();
    const std::size_t steps = std::min(m, n);
    for (std::size_t t = 0; t < steps; ++t) {
      if (!bring_smallest_to(t)) break;
      for (;;) {
        if (!clear_row_and_col(t)) {
          bring_smallest_to(t);
          continue;
        }
        if (fix_divisibility(t)) continue;
        break;
      }
      if (sgn(s_(t, t)) < 0) negate_row(t);
    }
    return SmithDecomposition{std::move(u_), std::move(s_), std::move(v_), std::move(uinv_),
                              std::move(vinv_)};
  }

 private:
  // Moves the smallest nonzero |entry| of the trailing submatrix to (t, t).
  bool bring_smallest_to(std::size_t t) {
    std::size_t best_r = 0, best_c = 0;
    bool found = false;
    Integer best;
    for (std::size_t r = t; r < s_.rows(); ++r) {
      for (std::size_t c = t; c < s_.cols(); ++c) {
        if (sgn(s_(r, c)) == 0) continue;
        Integer a = abs(s_(r, c));
        if (!found || a < best) {
          best = a;
          best_r = r;
          best_c = c;
          found = true;
        }
      }
    }
    if (!found) return false;
    swap_rows(t, best_r);
    swap_cols(t, best_c);
    return true;
  }

  // Reduces row t and column t modulo the pivot. Returns true when both
  // became zero off the diagonal.
  bool clear_row_and_col(std::size_t t) {
    bool clean = true;
    const Integer pivot = s_(t, t);
    for (std::size_t r = t + 1; r < s_.rows(); ++r) {
      if (sgn(s_(r, t)) == 0) continue;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), s_(r, t).get_mpz_t(), pivot.get_mpz_t());
      add_row_multiple(r, t, -q);
      if (sgn(s_(r, t)) != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < s_.cols(); ++c) {
      if (sgn(s_(t, c)) == 0) continue;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), s_(t, c).get_mpz_t(), pivot.get_mpz_t());
      add_col_multiple(c, t, -q);
      if (sgn(s_(t, c)) != 0) clean = false;
    }
    return clean;
  }

  // If the pivot fails to divide some trailing entry, folds that row into
  // row t and reports that more work is needed.
  bool fix_divisibility(std::size_t t) {
    const Integer& pivot = s_(t, t);
    for (std::size_t r = t + 1; r < s_.rows(); ++r) {
      for (std::size_t c = t + 1; c < s_.cols(); ++c) {
        if (!mpz_divisible_p(s_(r, c).get_mpz_t(), pivot.get_mpz_t())) {
          add_row_multiple(t, r, 1);
          return true;
        }
      }
    }
    return false;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    s_.swap_rows(a, b);
    if (!track_) return;
    u_.swap_rows(a, b);
    uinv_.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    s_.swap_cols(a, b);
    if (!track_) return;
    v_.swap_cols(a, b);
    vinv_.swap_rows(a, b);
  }
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    s_.add_row_multiple(dst, src, k);
    if (!track_) return;
    u_.add_row_multiple(dst, src, k);
    uinv_.add_col_multiple(src, dst, -k);
  }
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& k) {
    s_.add_col_multiple(dst, src, k);
    if (!track_) return;
    v_.add_col_multiple(dst, src, k);
    vinv_.add_row_multiple(src, dst, -k);
  }
  void negate_row(std::size_t r) {
    s_.negate_row(r);
    if (!track_) return;
    u_.negate_row(r);
    uinv_.negate_col(r);
  }

  IntMatrix s_, u_, uinv_, v_, vinv_;
  bool track_;
};

}  // namespace

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  const std::size_t k = std::min(s.rows(), s.cols());
  while (r < k && sgn(s(r, r)) != 0) ++r;
  return r;
}

std::vector<Integer> SmithDecomposition::diagonal() const {
  const std::size_t k = std::min(s.rows(), s.cols());
  std::vector<Integer> d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = s(i, i);
  return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) { return SmithWorker(a, true).run(); }

std::vector<Integer> smith_diagonal(const IntMatrix& a) { return SmithWorker(a, false).run().diagonal(); }

LatticeSolver::LatticeSolver(const IntMatrix& a)
    : rows_(a.rows()), cols_(a.cols()), snf_(smith_normal_form(a)), rank_(snf_.rank()) {}

std::optional<IntVector> LatticeSolver::solve(const IntVector& b) const {
  if (b.size() != rows_) {
    throw Error(ErrorCode::DimensionMismatch, "lattice_solve: right-hand side has wrong length");
  }
  // S y = U b with x = V y.
  const IntVector c = snf_.u * std::span<const Integer>(b);
  IntVector y(cols_);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < rank_) {
      const Integer& d = snf_.s(i, i);
      if (!mpz_divisible_p(c[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), d.get_mpz_t());
    } else if (sgn(c[i]) != 0) {
      return std::nullopt;
    }
  }
  return snf_.v * std::span<const Integer>(y);
}

std::optional<IntVector> lattice_solve(const IntMatrix& a, const IntVector& b) {
  return LatticeSolver(a).solve(b);
}

bool in_column_span(const IntMatrix& a, const IntVector& b) {
  return lattice_solve(a, b).has_value();
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const SmithDecomposition snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  return snf.v.cols_range(r, a.cols() - r);
}

IntMatrix column_space_basis(const IntMatrix& a) {
  // A = U^-1 S V^-1, so the columns d_i * (U^-1 e_i), i < rank, span the same lattice.
  const SmithDecomposition snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  IntMatrix basis(a.rows(), r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) basis(i, j) = snf.u_inverse(i, j) * snf.s(j, j);
  return basis;
}

}  // namespace hk
