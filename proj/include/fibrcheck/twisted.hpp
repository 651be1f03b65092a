#pragma once

#include <memory>
#include <string>

#include "fibrcheck/groups.hpp"
#include "fibrcheck/polymat.hpp"
#include "fibrcheck/words.hpp"

namespace fibrcheck {

enum class RepKind { Trivial, PermutationNatural, Regular };

std::string rep_kind_name(RepKind kind);

/// A representation G -> GL(F_p, dim) composed with alpha.
struct Representation {
  RepKind kind = RepKind::Trivial;
  std::size_t dim = 1;
  std::int64_t prime = 2;
  /// gcd(p, |G|) == 1; recorded here, enforced by the criteria.
  bool coprime = true;
  /// Target group; needed for the regular basis. Null for Trivial.
  std::shared_ptr<const FiniteGroup> group;
};

/// Throws DegreeMismatch if `prime` is not prime or the group is too large.
Representation make_representation(RepKind kind, const TargetGroup& target, std::int64_t prime);

/// Matrix of (rep (x) phi)(g): representation matrix of g times t^weight.
/// Column convention: entry (i, j) is the coefficient of e_i in g e_j, so
/// block products follow group multiplication.
PolyMatrix rep_of_element(const Representation& rep, const Permutation& g, std::int64_t weight);

/// Twisted cellular chain complex of the presentation 2-complex,
/// C_2 -> C_1 -> C_0 with row vectors: d2 is (relators*dim) x (gens*dim),
/// d1 is (gens*dim) x dim, and d2 * d1 = 0.
struct TwistedComplex {
  PolyMatrix d1;
  PolyMatrix d2;
  std::size_t generators = 0;
  std::size_t relators = 0;
  Representation rep;
  Phi phi;
};

TwistedComplex build_complex(const Presentation& p, const GroupHom& h, const Representation& rep, const Phi& phi);

/// Image of a group-ring element under the linear extension of rep (x) phi.
PolyMatrix evaluate_ring_element(const FreeRingElement& e, const GroupHom& h, const Representation& rep,
                                 const Phi& phi);

LaurentPoly delta0(const TwistedComplex& c);
LaurentPoly delta1(const TwistedComplex& c);
LaurentPoly delta2(const TwistedComplex& c);

struct DeltaSet {
  LaurentPoly delta0;
  LaurentPoly delta1;
  LaurentPoly delta2;
  Degree d0, d1, d2;
};

DeltaSet compute_deltas(const TwistedComplex& c);

/// Untwisted Alexander polynomial over Z[t^+-1] of a deficiency-one
/// meridian presentation. With n relators for n generators the last relator
/// is dropped. `deleted_column` selects the generator column removed.
LaurentPoly ordinary_alexander(const Presentation& p, std::size_t deleted_column = 0);

}  // namespace fibrcheck
