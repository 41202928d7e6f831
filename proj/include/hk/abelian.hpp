#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hk/int_matrix.hpp"

namespace hk {

/// Free rank plus torsion coefficients d_1 | d_2 | ... with every d_i >= 2.
struct InvariantFactors {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const InvariantFactors&, const InvariantFactors&) = default;
};

/// Canonical text form: "0", "Z", "Z^r", "Z/d", joined by " + ".
std::string to_string(const InvariantFactors& f);

/// Finitely generated abelian group Z^g / (column span of the relation matrix).
///
/// The invariant factors are computed once at construction. Two groups are
/// isomorphic iff their invariant factors agree; operator== instead compares
/// presentations, which is what composition of homomorphisms needs.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  FgAbGroup(std::size_t generators, IntMatrix relations);

  static FgAbGroup trivial() { return {}; }
  static FgAbGroup free(std::size_t rank);
  static FgAbGroup cyclic(const Integer& order);
  static FgAbGroup from_invariants(const InvariantFactors& f);

  std::size_t generators() const noexcept { return generators_; }
  const IntMatrix& relations() const noexcept;
  const InvariantFactors& invariants() const noexcept { return invariants_; }
  std::size_t free_rank() const noexcept { return invariants_.free_rank; }
  const std::vector<Integer>& torsion() const noexcept { return invariants_.torsion; }
  bool is_trivial() const noexcept { return invariants_.is_trivial(); }

  /// True iff the generator-coordinate vector represents zero.
  bool is_zero_element(const IntVector& x) const;

  std::string to_string() const { return hk::to_string(invariants_); }

  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.generators_ == b.generators_ &&
           (a.relations_ == b.relations_ || a.relations() == b.relations());
  }

 private:
  std::size_t generators_ = 0;
  // Shared so that copies of large direct sums stay cheap; never mutated.
  std::shared_ptr<const IntMatrix> relations_;
  InvariantFactors invariants_;
};

bool is_isomorphic(const FgAbGroup& a, const FgAbGroup& b);

std::ostream& operator<<(std::ostream& os, const FgAbGroup& g);

/// Homomorphism of presented groups given on generators.
///
/// matrix is (target generators) x (source generators). Construction checks
/// that every source relation is sent into the target relation lattice.
class AbHom {
 public:
  struct Unchecked {};

  AbHom() = default;
  AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);
  /// Skips the well-definedness check; for maps known to be well defined by construction.
  AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix, Unchecked);

  static AbHom zero(const FgAbGroup& source, const FgAbGroup& target);
  static AbHom identity(const FgAbGroup& g);

  const FgAbGroup& source() const noexcept { return source_; }
  const FgAbGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  /// True iff this is the zero map on the presented groups.
  bool is_zero() const;

  AbHom operator-() const;
  friend AbHom operator+(const AbHom& a, const AbHom& b);
  friend AbHom operator-(const AbHom& a, const AbHom& b);
  /// Integer multiple.
  friend AbHom operator*(const Integer& k, const AbHom& f);

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMatrix matrix_;
};

/// True iff the matrix sends the source relations into the target relation lattice.
bool is_well_defined(const FgAbGroup& source, const FgAbGroup& target, const IntMatrix& matrix);

/// g o f. Requires f.target() == g.source() as presentations.
AbHom compose(const AbHom& g, const AbHom& f);

/// Equality as maps of presented groups (differences land in the relations).
bool same_map(const AbHom& a, const AbHom& b);

struct Cokernel {
  FgAbGroup group;
  AbHom projection;
};

struct Kernel {
  FgAbGroup group;
  AbHom inclusion;
};

/// target / image(h), with the canonical surjection.
Cokernel cokernel(const AbHom& h);

/// The kernel as a presented group together with its inclusion into the source.
///
/// Works on free covers: the preimage lattice {x : M x in span(target relations)}
/// is read off an integer kernel of [M | target relations], reduced to a basis,
/// and the source relations are re-expressed in that basis.
Kernel kernel(const AbHom& h);

/// ker(d_out) / im(d_in). Throws if the presentations do not chain or the composite is nonzero.
FgAbGroup homology_at(const AbHom& d_out, const AbHom& d_in);

struct DirectSum {
  FgAbGroup group;
  std::vector<AbHom> injections;
  std::vector<AbHom> projections;
  /// First generator index of each summand.
  std::vector<std::size_t> offsets;
};

DirectSum direct_sum(std::span<const FgAbGroup> groups);

/// A^m.
FgAbGroup power(const FgAbGroup& a, std::size_t m);

/// f^m : A^m -> B^m, the block-diagonal m-fold sum.
AbHom power(const AbHom& f, std::size_t m);

/// Cyclic shift (a_1, ..., a_m) -> (a_m, a_1, ..., a_{m-1}) on A^m.
AbHom cyclic_shift(const FgAbGroup& a, std::size_t m);

/// (a_1, ..., a_m) -> a_1 + ... + a_m.
AbHom augmentation(const FgAbGroup& a, std::size_t m);

/// f^k for an endomorphism, k >= 0.
AbHom iterate(const AbHom& f, std::size_t k);

/// Assembles a map between direct sums from per-summand blocks.
///
/// Unset blocks are zero. Blocks added to the same position accumulate.
class BlockMapBuilder {
 public:
  BlockMapBuilder(std::vector<FgAbGroup> sources, std::vector<FgAbGroup> targets);

  /// Adds `f` (which must map sources[i] to targets[j]) into block (j, i).
  void add(std::size_t target_index, std::size_t source_index, const AbHom& f);

  const DirectSum& source_sum() const { return source_sum_; }
  const DirectSum& target_sum() const { return target_sum_; }

  AbHom build() const;

 private:
  std::vector<FgAbGroup> sources_;
  std::vector<FgAbGroup> targets_;
  DirectSum source_sum_;
  DirectSum target_sum_;
  IntMatrix matrix_;
};

}  // namespace hk
