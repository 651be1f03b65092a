#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fibrcheck {

/// Degree of a Laurent polynomial: max minus min exponent, or -infinity for 0.
class Degree {
 public:
  constexpr Degree() = default;  // -infinity
  constexpr explicit Degree(std::int64_t value) : value_(value) {}
  static constexpr Degree minus_infinity() { return Degree(); }

  constexpr bool is_finite() const { return value_ != kNegInf; }
  constexpr std::int64_t value() const { return value_; }
  std::string to_string() const { return is_finite() ? std::to_string(value_) : "-inf"; }

  constexpr auto operator<=>(const Degree&) const = default;
  constexpr bool operator==(const Degree&) const = default;
  friend constexpr bool operator==(Degree a, std::int64_t b) { return a.value_ == b; }

 private:
  static constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
  std::int64_t value_ = kNegInf;
};

/// Laurent polynomial over F_p (modulus p) or Z (modulus kIntegers).
/// Coefficients are stored densely from `min_exp` upward with no leading or
/// trailing zeros; over F_p they are canonical residues 0..p-1.
class LaurentPoly {
 public:
  static constexpr std::int64_t kIntegers = 0;

  explicit LaurentPoly(std::int64_t modulus = kIntegers) : modulus_(modulus) {}
  LaurentPoly(std::int64_t modulus, std::int64_t min_exp, std::vector<std::int64_t> coeffs);

  static LaurentPoly constant(std::int64_t c, std::int64_t modulus = kIntegers);
  static LaurentPoly monomial(std::int64_t c, std::int64_t exp, std::int64_t modulus = kIntegers);
  /// t - 1, t^2 + 1 ... from ascending coefficients starting at t^0.
  static LaurentPoly from_ascending(std::vector<std::int64_t> coeffs, std::int64_t modulus = kIntegers);

  std::int64_t modulus() const noexcept { return modulus_; }
  bool over_integers() const noexcept { return modulus_ == kIntegers; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::int64_t min_exp() const noexcept { return min_exp_; }
  std::int64_t max_exp() const noexcept { return min_exp_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
  const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
  std::int64_t coefficient(std::int64_t exp) const;
  std::int64_t lowest_coefficient() const { return coeffs_.front(); }
  std::int64_t leading_coefficient() const { return coeffs_.back(); }

  LaurentPoly shifted(std::int64_t k) const;
  /// f(t^-1)
  LaurentPoly inverted_variable() const;
  LaurentPoly scaled(std::int64_t c) const;
  LaurentPoly reduced_mod(std::int64_t p) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator-() const { return scaled(-1); }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  bool operator==(const LaurentPoly&) const = default;

  /// e.g. "t^2 - 3t + 1"; over F_p coefficients print as residues.
  std::string to_string() const;

 private:
  void trim();
  std::int64_t reduce(std::int64_t c) const;

  std::int64_t modulus_ = kIntegers;
  std::int64_t min_exp_ = 0;
  std::vector<std::int64_t> coeffs_;
};

/// Unit-normal form: lowest exponent 0; over F_p lowest coefficient 1, over Z
/// leading coefficient positive.
LaurentPoly lp_normalize(const LaurentPoly& f);
Degree lp_degree(const LaurentPoly& f);

/// Over F_p: polynomials after clearing t-powers agree up to a nonzero scalar.
/// Over Z: up to sign.
bool equal_up_to_units(const LaurentPoly& f, const LaurentPoly& g);

/// Top coefficient of the canonical form is 1.
bool is_monic(const LaurentPoly& f);

/// Division with remainder in F_p[t] for ordinary polynomials (min_exp >= 0);
/// divisor nonzero.
std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& a, const LaurentPoly& b);

/// Monic gcd in F_p[t].
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

/// a | b in F_p[t^+-1] (t-powers are units). 0 | b only for b = 0.
bool laurent_divides(const LaurentPoly& a, const LaurentPoly& b);

/// Dense matrix of Laurent polynomials sharing one modulus.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::int64_t modulus);

  static PolyMatrix identity(std::size_t n, std::int64_t modulus);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  LaurentPoly& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const LaurentPoly& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  /// Copy of the matrix without column `c`.
  PolyMatrix without_column(std::size_t c) const;

  bool is_zero() const;
  bool operator==(const PolyMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::int64_t modulus_ = LaurentPoly::kIntegers;
  std::vector<LaurentPoly> entries_;
};

/// Product skipping zero entries; throws ModulusMismatch / DegreeMismatch.
PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);

struct SnfResult {
  std::size_t rank = 0;
  /// Monic elementary divisors over F_p[t] forming a divisibility chain.
  std::vector<LaurentPoly> divisors;
};

/// Smith normal form over F_p[t]. Columns carrying negative exponents are
/// first multiplied by the unit t^k that makes them polynomial.
SnfResult smith_normal_form(const PolyMatrix& m);

/// Determinant over Z[t^+-1] by fraction-free elimination; normalized.
LaurentPoly det_int_poly(const PolyMatrix& m);

/// Polynomial serialization used in reports.
struct PolyJson {
  std::int64_t min_exp = 0;
  std::vector<std::int64_t> coeffs;
};
PolyJson to_poly_json(const LaurentPoly& f);
LaurentPoly from_poly_json(const PolyJson& j, std::int64_t modulus);

}  // namespace fibrcheck
