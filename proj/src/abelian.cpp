#include "hk/abelian.hpp"

#include <ostream>
#include <sstream>
#include <utility>

#include "hk/error.hpp"
#include "hk/smith.hpp"

namespace hk {

std::string to_string(const InvariantFactors& f) {
  if (f.is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (f.free_rank == 1) {
    os << "Z";
    first = false;
  } else if (f.free_rank > 1) {
    os << "Z^" << f.free_rank;
    first = false;
  }
  for (const auto& d : f.torsion) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  return os.str();
}

FgAbGroup::FgAbGroup(std::size_t generators, IntMatrix relations) : generators_(generators) {
  // Relations of the zero group carry no information; keep one shape for it.
  if (generators_ == 0 && relations.rows() == 0) relations = IntMatrix(0, 0);
  if (relations.rows() != generators_) {
    // A 0 x 0 default matrix is accepted as "no relations".
    if (relations.rows() == 0 && relations.cols() == 0) {
      relations = IntMatrix(generators_, 0);
    } else {
      throw Error(ErrorCode::DimensionMismatch,
                  "relation matrix must have one row per generator");
    }
  }
  std::size_t r = 0;
  for (const Integer& d : smith_diagonal(relations)) {
    if (sgn(d) == 0) break;
    ++r;
    if (d != 1) invariants_.torsion.push_back(d);
  }
  invariants_.free_rank = generators_ - r;
  relations_ = std::make_shared<const IntMatrix>(std::move(relations));
}

const IntMatrix& FgAbGroup::relations() const noexcept {
  static const IntMatrix none;
  return relations_ ? *relations_ : none;
}

FgAbGroup FgAbGroup::free(std::size_t rank) { return FgAbGroup(rank, IntMatrix(rank, 0)); }

FgAbGroup FgAbGroup::cyclic(const Integer& order) {
  IntMatrix rel(1, 1);
  rel(0, 0) = abs(order);
  return FgAbGroup(1, std::move(rel));
}

FgAbGroup FgAbGroup::from_invariants(const InvariantFactors& f) {
  const std::size_t g = f.free_rank + f.torsion.size();
  IntMatrix rel(g, f.torsion.size());
  for (std::size_t j = 0; j < f.torsion.size(); ++j) rel(f.free_rank + j, j) = f.torsion[j];
  return FgAbGroup(g, std::move(rel));
}

bool FgAbGroup::is_zero_element(const IntVector& x) const {
  if (x.size() != generators_) {
    throw Error(ErrorCode::DimensionMismatch, "element has wrong number of coordinates");
  }
  return in_column_span(relations(), x);
}

bool is_isomorphic(const FgAbGroup& a, const FgAbGroup& b) {
  return a.invariants() == b.invariants();
}

std::ostream& operator<<(std::ostream& os, const FgAbGroup& g) { return os << g.to_string(); }

bool is_well_defined(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& matrix) {
  if (matrix.rows() != target.generators() || matrix.cols() != source.generators()) {
    throw Error(ErrorCode::DimensionMismatch, "hom matrix shape does not match its groups");
  }
  if (source.relations().cols() == 0) return true;
  const IntMatrix images = matrix * source.relations();
  if (images.is_zero()) return true;
  const LatticeSolver solver(target.relations());
  for (std::size_t c = 0; c < images.cols(); ++c) {
    if (!solver.contains(images.col(c))) return false;
  }
  return true;
}

AbHom::AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (!is_well_defined(source_, target_, matrix_)) {
    throw Error(ErrorCode::IllDefined,
                "homomorphism does not respect the source relations");
  }
}

AbHom::AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix, Unchecked)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generators() || matrix_.cols() != source_.generators()) {
    throw Error(ErrorCode::DimensionMismatch, "hom matrix shape does not match its groups");
  }
}

AbHom AbHom::zero(const FgAbGroup& source, const FgAbGroup& target) {
  return AbHom(source, target, IntMatrix(target.generators(), source.generators()), Unchecked{});
}

AbHom AbHom::identity(const FgAbGroup& g) {
  return AbHom(g, g, IntMatrix::identity(g.generators()), Unchecked{});
}

bool AbHom::is_zero() const {
  if (matrix_.is_zero()) return true;
  const LatticeSolver solver(target_.relations());
  for (std::size_t c = 0; c < matrix_.cols(); ++c) {
    if (!solver.contains(matrix_.col(c))) return false;
  }
  return true;
}

AbHom AbHom::operator-() const { return AbHom(source_, target_, -matrix_, Unchecked{}); }

namespace {
void require_parallel(const AbHom& a, const AbHom& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target())) {
    throw Error(ErrorCode::DimensionMismatch, "maps with different source or target");
  }
}
}  // namespace

AbHom operator+(const AbHom& a, const AbHom& b) {
  require_parallel(a, b);
  return AbHom(a.source_, a.target_, a.matrix_ + b.matrix_, AbHom::Unchecked{});
}

AbHom operator-(const AbHom& a, const AbHom& b) {
  require_parallel(a, b);
  return AbHom(a.source_, a.target_, a.matrix_ - b.matrix_, AbHom::Unchecked{});
}

AbHom operator*(const Integer& k, const AbHom& f) {
  return AbHom(f.source_, f.target_, k * f.matrix_, AbHom::Unchecked{});
}

AbHom compose(const AbHom& g, const AbHom& f) {
  if (!(f.target() == g.source())) {
    throw Error(ErrorCode::DimensionMismatch, "compose: presentations do not chain");
  }
  return AbHom(f.source(), g.target(), g.matrix() * f.matrix(), AbHom::Unchecked{});
}

bool same_map(const AbHom& a, const AbHom& b) {
  require_parallel(a, b);
  return (a - b).is_zero();
}

Cokernel cokernel(const AbHom& h) {
  const FgAbGroup& t = h.target();
  FgAbGroup q(t.generators(), IntMatrix::hconcat(t.relations(), h.matrix()));
  AbHom proj(t, q, IntMatrix::identity(t.generators()), AbHom::Unchecked{});
  return Cokernel{std::move(q), std::move(proj)};
}

Kernel kernel(const AbHom& h) {
  const FgAbGroup& a = h.source();
  const FgAbGroup& b = h.target();
  const std::size_t ng = a.generators();

  // x in the preimage lattice iff (x, z) solves [M | R_B] (x; z) = 0 for some z.
  const IntMatrix lifted = integer_kernel(IntMatrix::hconcat(h.matrix(), b.relations()));
  const IntMatrix spanning = lifted.rows_range(0, ng);
  const IntMatrix basis = column_space_basis(spanning);

  // Source relations lie in the preimage lattice; express them in the basis.
  const LatticeSolver solver(basis);
  IntMatrix rel(basis.cols(), a.relations().cols());
  for (std::size_t c = 0; c < a.relations().cols(); ++c) {
    auto y = solver.solve(a.relations().col(c));
    if (!y) {
      throw Error(ErrorCode::IllDefined, "kernel: source relation outside the preimage lattice");
    }
    for (std::size_t r = 0; r < y->size(); ++r) rel(r, c) = (*y)[r];
  }
  FgAbGroup k(basis.cols(), std::move(rel));
  AbHom inclusion(k, a, basis, AbHom::Unchecked{});
  return Kernel{std::move(k), std::move(inclusion)};
}

FgAbGroup homology_at(const AbHom& d_out, const AbHom& d_in) {
  if (!(d_in.target() == d_out.source())) {
    throw Error(ErrorCode::DimensionMismatch, "homology_at: maps do not share the middle group");
  }
  if (!compose(d_out, d_in).is_zero()) {
    throw Error(ErrorCode::NonZeroComposite, "homology_at: composite of differentials is nonzero");
  }
  const Kernel k = kernel(d_out);
  const FgAbGroup& middle = d_out.source();
  const std::size_t nk = k.group.generators();

  // Lift the image of d_in into kernel coordinates modulo the middle relations.
  const LatticeSolver solver(IntMatrix::hconcat(k.inclusion.matrix(), middle.relations()));
  const IntMatrix& image = d_in.matrix();
  IntMatrix lifted(nk, image.cols());
  for (std::size_t c = 0; c < image.cols(); ++c) {
    auto y = solver.solve(image.col(c));
    if (!y) {
      throw Error(ErrorCode::NonZeroComposite, "homology_at: image not contained in kernel");
    }
    for (std::size_t r = 0; r < nk; ++r) lifted(r, c) = (*y)[r];
  }
  return FgAbGroup(nk, IntMatrix::hconcat(k.group.relations(), lifted));
}

DirectSum direct_sum(std::span<const FgAbGroup> groups) {
  DirectSum out;
  std::size_t total = 0;
  std::vector<IntMatrix> rels;
  for (const auto& g : groups) {
    out.offsets.push_back(total);
    total += g.generators();
    rels.push_back(g.relations());
  }
  out.group = FgAbGroup(total, IntMatrix::block_diagonal(rels));
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const std::size_t n = groups[i].generators();
    IntMatrix inj(total, n);
    IntMatrix proj(n, total);
    for (std::size_t k = 0; k < n; ++k) {
      inj(out.offsets[i] + k, k) = 1;
      proj(k, out.offsets[i] + k) = 1;
    }
    out.injections.emplace_back(groups[i], out.group, std::move(inj), AbHom::Unchecked{});
    out.projections.emplace_back(out.group, groups[i], std::move(proj), AbHom::Unchecked{});
  }
  return out;
}

FgAbGroup power(const FgAbGroup& a, std::size_t m) {
  std::vector<FgAbGroup> copies(m, a);
  return direct_sum(copies).group;
}

AbHom power(const AbHom& f, std::size_t m) {
  std::vector<IntMatrix> blocks(m, f.matrix());
  return AbHom(power(f.source(), m), power(f.target(), m), IntMatrix::block_diagonal(blocks),
               AbHom::Unchecked{});
}

AbHom cyclic_shift(const FgAbGroup& a, std::size_t m) {
  const std::size_t g = a.generators();
  const FgAbGroup am = power(a, m);
  IntMatrix p(g * m, g * m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t from = (i + m - 1) % m;
    p.set_block(i * g, from * g, IntMatrix::identity(g));
  }
  return AbHom(am, am, std::move(p), AbHom::Unchecked{});
}

AbHom augmentation(const FgAbGroup& a, std::size_t m) {
  const std::size_t g = a.generators();
  IntMatrix s(g, g * m);
  for (std::size_t i = 0; i < m; ++i) s.set_block(0, i * g, IntMatrix::identity(g));
  return AbHom(power(a, m), a, std::move(s), AbHom::Unchecked{});
}

AbHom iterate(const AbHom& f, std::size_t k) {
  if (!(f.source() == f.target())) {
    throw Error(ErrorCode::DimensionMismatch, "iterate: not an endomorphism");
  }
  AbHom out = AbHom::identity(f.source());
  for (std::size_t i = 0; i < k; ++i) out = compose(f, out);
  return out;
}

BlockMapBuilder::BlockMapBuilder(std::vector<FgAbGroup> sources, std::vector<FgAbGroup> targets)
    : sources_(std::move(sources)),
      targets_(std::move(targets)),
      source_sum_(direct_sum(sources_)),
      target_sum_(direct_sum(targets_)),
      matrix_(target_sum_.group.generators(), source_sum_.group.generators()) {}

void BlockMapBuilder::add(std::size_t target_index, std::size_t source_index, const AbHom& f) {
  if (!(f.source() == sources_.at(source_index)) || !(f.target() == targets_.at(target_index))) {
    throw Error(ErrorCode::DimensionMismatch, "block does not match the summands it connects");
  }
  matrix_.add_block(target_sum_.offsets[target_index], source_sum_.offsets[source_index],
                    f.matrix());
}

AbHom BlockMapBuilder::build() const {
  return AbHom(source_sum_.group, target_sum_.group, matrix_, AbHom::Unchecked{});
}

}  // namespace hk
