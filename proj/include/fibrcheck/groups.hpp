#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fibrcheck/words.hpp"

namespace fibrcheck {

/// Bijection of {0, ..., k-1}, stored as its image table.
class Permutation {
 public:
  Permutation() = default;
  /// Throws Malformed unless `images` is a bijection.
  explicit Permutation(std::vector<std::uint8_t> images);

  static Permutation identity(std::size_t k);

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint8_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::uint8_t>& images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  bool is_even() const;
  Permutation inverse() const;
  /// Cycle lengths sorted descending, fixed points included.
  std::vector<int> cycle_type() const;
  std::string to_cycle_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<std::uint8_t> images_;
};

/// (p o q)(i) = p(q(i)).
Permutation perm_compose(const Permutation& p, const Permutation& q);

/// Product of disjoint cycles over symbols 1..k; (c1 c2 ... cm) sends c1 to
/// c2, ..., cm to c1. Symbols may be juxtaposed digits when k <= 9.
Permutation perm_from_cycles(std::string_view text, std::size_t k);

/// One-line notation over symbols 1..k: the i-th symbol is the image of i.
/// Accepts an optional pair of surrounding parentheses.
Permutation perm_from_one_line(std::string_view text, std::size_t k);

enum class GroupFamily { Symmetric, Alternating };

struct TargetGroup {
  GroupFamily family = GroupFamily::Symmetric;
  std::size_t k = 2;

  static TargetGroup symmetric(std::size_t k) { return {GroupFamily::Symmetric, k}; }
  static TargetGroup alternating(std::size_t k) { return {GroupFamily::Alternating, k}; }
  /// "S5", "A4".
  static TargetGroup parse(std::string_view name);

  std::uint64_t order() const;
  std::string name() const;
  bool contains(const Permutation& p) const;

  bool operator==(const TargetGroup&) const = default;
};

/// Explicit finite permutation group: elements in canonical (lexicographic
/// image-table) order plus multiplication, inverse and conjugation tables.
/// Index 0 is the identity.
class FiniteGroup {
 public:
  static constexpr std::size_t kMaxOrder = 5040;

  explicit FiniteGroup(const TargetGroup& target);

  /// Process-wide cache keyed by target.
  static std::shared_ptr<const FiniteGroup> get(const TargetGroup& target);

  const TargetGroup& target() const noexcept { return target_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const Permutation& element(std::size_t i) const { return elements_[i]; }
  std::optional<std::uint32_t> index_of(const Permutation& p) const;

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * order() + b]; }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  /// g a g^-1
  std::uint32_t conj(std::uint32_t g, std::uint32_t a) const { return mul(mul(g, a), inv(g)); }

  /// Conjugacy classes under this group, each sorted, classes ordered by
  /// their smallest element.
  const std::vector<std::vector<std::uint32_t>>& conjugacy_classes() const noexcept { return classes_; }

 private:
  TargetGroup target_;
  std::vector<Permutation> elements_;
  std::vector<std::uint16_t> mul_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::vector<std::uint32_t>> classes_;
};

/// alpha: pi_1 -> G, one image per generator.
struct GroupHom {
  TargetGroup target;
  std::vector<Permutation> images;
  bool surjective = false;

  auto operator<=>(const GroupHom& o) const { return images <=> o.images; }
  bool operator==(const GroupHom& o) const { return target == o.target && images == o.images; }
};

Permutation apply_word(const GroupHom& h, const Word& w);
Permutation apply_word(std::span<const Permutation> images, const Word& w);

/// Relators (and longitude, when present) all map to the identity.
bool is_homomorphism(const Presentation& p, std::span<const Permutation> images);

/// True iff the images generate the whole target group.
bool is_surjective(const GroupHom& h);

/// Size of the subgroup generated by `gens`, exploring at most `stop_at`
/// elements.
std::uint64_t generated_order(std::span<const Permutation> gens, std::uint64_t stop_at);

/// Conjugates every image by g: x -> g x g^-1.
GroupHom conjugate(const GroupHom& h, const Permutation& g);

struct SearchLimits {
  std::size_t max_homs = 10'000;
  std::chrono::milliseconds wall_clock{std::chrono::minutes(10)};
  unsigned workers = 1;
};

struct EpimorphismSearch {
  std::vector<GroupHom> homs;  // canonical representatives, sorted
  bool complete = true;
  std::string limit_reason;    // why the search stopped early, if it did
  bool class_constraint = false;
};

/// All epimorphisms p -> g up to simultaneous conjugation, canonical
/// representatives (lexicographically least conjugate) in lexicographic
/// order. Meridian presentations restrict every image to one conjugacy
/// class.
EpimorphismSearch enumerate_epimorphisms(const Presentation& p, const TargetGroup& g,
                                         const SearchLimits& limits = {});

/// Least conjugate of `h` in lexicographic image-table order.
GroupHom canonical_conjugate(const GroupHom& h);

/// gcd of phi over Ker(alpha) via Schreier generators of a BFS tree on the
/// subgroup generated by `images`. Works for non-surjective maps (kernel of
/// the map onto the image).
std::int64_t kernel_divisibility(std::span<const Permutation> images, const Phi& phi);

/// div phi_G for an epimorphism; throws NotSurjective otherwise.
std::int64_t div_phi_G(const Presentation& p, const GroupHom& h, const Phi& phi);

}  // namespace fibrcheck
