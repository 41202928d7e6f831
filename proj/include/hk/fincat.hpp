#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hk/abelian.hpp"
#include "hk/error.hpp"

namespace hk {

using ObjectId = std::size_t;
using MorphismId = std::size_t;

struct Morphism {
  std::string label;
  ObjectId source = 0;
  ObjectId target = 0;

  friend bool operator==(const Morphism&, const Morphism&) = default;
};

/// A category given by complete finite data.
///
/// Every object gets an identity morphism labelled "id_<object>" when it is
/// added. Composites involving an identity are implied; every other
/// composable pair must be entered in the composition table.
class FinCategory {
 public:
  ObjectId add_object(std::string label);
  MorphismId add_morphism(std::string label, ObjectId source, ObjectId target);
  /// Records g o f = h.
  void set_composite(MorphismId g, MorphismId f, MorphismId h);

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return morphisms_.size(); }
  const std::string& object_label(ObjectId x) const { return objects_.at(x); }
  const Morphism& morphism(MorphismId f) const { return morphisms_.at(f); }
  MorphismId identity(ObjectId x) const { return identities_.at(x); }
  bool is_identity(MorphismId f) const;

  std::optional<ObjectId> find_object(const std::string& label) const;
  std::optional<MorphismId> find_morphism(const std::string& label) const;

  /// g o f, or nullopt when the pair is not composable or missing from the table.
  std::optional<MorphismId> compose(MorphismId g, MorphismId f) const;

  /// Explicit (non-identity) composition table, keyed by (g, f).
  const std::map<std::pair<MorphismId, MorphismId>, MorphismId>& composition_table() const {
    return composition_;
  }

  friend bool operator==(const FinCategory&, const FinCategory&) = default;

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorphismId> identities_;
  std::map<std::pair<MorphismId, MorphismId>, MorphismId> composition_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

/// Checks endpoints, closure of the composition table, unit laws and associativity.
Report validate_category(const FinCategory& c);

struct Subcategory {
  CategoryPtr category;
  std::vector<std::optional<ObjectId>> object_map;      // old -> new
  std::vector<std::optional<MorphismId>> morphism_map;  // old -> new
};

/// Full subcategory on the given objects.
Subcategory full_subcategory(const FinCategory& c, const std::vector<ObjectId>& objects);

/// Functor between finite categories given by its object and morphism maps.
struct CatFunctor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<ObjectId> object_map;
  std::vector<MorphismId> morphism_map;
};

Report validate_functor(const CatFunctor& p);

/// Covariant functor from a finite category into presented abelian groups.
class CoeffSystem {
 public:
  CoeffSystem() = default;
  /// Missing identity entries default to identity maps; every other morphism
  /// needs a matrix. Matrices are checked for well-definedness.
  CoeffSystem(CategoryPtr category, std::vector<FgAbGroup> values,
              const std::map<MorphismId, IntMatrix>& matrices,
              std::set<MorphismId> central = {});

  /// Value A at every object, identity on every morphism.
  static CoeffSystem constant(CategoryPtr category, const FgAbGroup& a);
  /// The zero system.
  static CoeffSystem zero(CategoryPtr category);

  const CategoryPtr& category() const noexcept { return category_; }
  const FgAbGroup& value(ObjectId x) const { return values_.at(x); }
  const AbHom& map(MorphismId f) const { return maps_.at(f); }
  const std::vector<FgAbGroup>& values() const noexcept { return values_; }
  const std::vector<AbHom>& maps() const noexcept { return maps_; }
  /// Morphisms flagged as centralizer-induced; they must act as the identity.
  const std::set<MorphismId>& central() const noexcept { return central_; }

  /// True iff every value is the trivial group.
  bool is_zero() const;

 private:
  CategoryPtr category_;
  std::vector<FgAbGroup> values_;
  std::vector<AbHom> maps_;
  std::set<MorphismId> central_;
};

/// Functoriality, identities, and the identity action of flagged morphisms.
Report validate_functor(const CoeffSystem& f);

/// Restriction of F to the full subcategory on `objects`.
CoeffSystem restrict(const CoeffSystem& f, const std::vector<ObjectId>& objects);

/// The system N on p.target with N o P = F on the nose.
///
/// Throws ConditionSub when two morphisms (or objects) with the same image
/// carry different data, in particular when a morphism collapsed to an
/// identity does not act as the identity.
CoeffSystem pushdown(const CoeffSystem& f, const CatFunctor& p);

/// Coequalizer presentation of colim F:
/// coker( sum over non-identity f: x -> y of F(x)  ->  sum over objects of F(x) ),
/// the f-block being (inclusion at y) o F(f) - (inclusion at x).
FgAbGroup colimit(const CoeffSystem& f);

}  // namespace hk
