#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fibrcheck {

/// One signed generator occurrence, x_gen^sign.
struct Letter {
  std::uint32_t gen = 0;
  std::int8_t sign = 1;

  Letter inverse() const { return Letter{gen, static_cast<std::int8_t>(-sign)}; }
  auto operator<=>(const Letter&) const = default;
};

/// Freely reduced word in a free group. Every constructor reduces.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  static Word generator(std::uint32_t gen, int exponent = 1);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// Appends one letter, cancelling against the tail.
  void push_back(Letter l);

  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

Word word_mul(const Word& u, const Word& v);
Word word_inverse(const Word& w);

/// Exponent sum of each generator, indexed by generator.
std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t generator_count);

/// Parses `ident` / `ident^INT` tokens separated by whitespace.
Word parse_word(std::string_view text, std::span<const std::string> generators);

/// Inverse of parse_word: maximal runs of equal letters become `ident^n`.
std::string render_word(const Word& w, std::span<const std::string> generators);

/// Element of the integral group ring Z[F] of the free group. Terms are kept
/// keyed by reduced monomial with nonzero coefficients only.
class FreeRingElement {
 public:
  FreeRingElement() = default;
  static FreeRingElement monomial(const Word& w, std::int64_t coefficient = 1);

  const std::map<Word, std::int64_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Word& w, std::int64_t coefficient);

  FreeRingElement& operator+=(const FreeRingElement& other);
  FreeRingElement& operator-=(const FreeRingElement& other);
  friend FreeRingElement operator+(FreeRingElement a, const FreeRingElement& b) { return a += b; }
  friend FreeRingElement operator-(FreeRingElement a, const FreeRingElement& b) { return a -= b; }
  friend FreeRingElement operator*(const FreeRingElement& a, const FreeRingElement& b);

  /// w * this
  FreeRingElement left_multiplied(const Word& w) const;

  bool operator==(const FreeRingElement&) const = default;

 private:
  std::map<Word, std::int64_t> terms_;
};

/// Fox free derivative d w / d x_gen.
FreeRingElement fox_derivative(const Word& w, std::uint32_t gen);

struct Presentation {
  std::string name;
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::optional<Word> longitude;
  std::optional<int> genus;

  std::optional<std::uint32_t> generator_index(std::string_view ident) const;
};

/// Cohomology class as a homomorphism to Z, given by its generator values.
struct Phi {
  std::vector<std::int64_t> values;

  std::int64_t weight(const Word& w) const;
  bool operator==(const Phi&) const = default;
};

/// Parses and validates the JSON presentation document.
Presentation load_presentation(std::string_view document);
Presentation load_presentation_file(const std::filesystem::path& path);

/// Appends the longitude as a relator, giving the 0-surgery group.
Presentation surgery_presentation(const Presentation& p);

/// The all-ones class for meridian presentations; checks every relator (and
/// the longitude) has zero weight.
Phi abelianization_phi(const Presentation& p);

/// Stable text form of the group data (generators + relators + longitude);
/// used for content hashing.
std::string canonical_text(const Presentation& p);

}  // namespace fibrcheck
