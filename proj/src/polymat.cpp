#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fibrcheck/error.hpp"
#include "fibrcheck/polymat.hpp"

namespace fibrcheck {

namespace {

Error poly_error(Errc code, const std::string& what) { return Error(code, "polymat", what); }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw poly_error(Errc::Overflow, "integer coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw poly_error(Errc::Overflow, "integer coefficient overflow");
  return r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  if (new_r < 0) new_r += p;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("element not invertible mod " + std::to_string(p));
  return t < 0 ? t + p : t;
}

void check_same_modulus(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.modulus() != b.modulus()) {
    throw poly_error(Errc::ModulusMismatch, "polynomials over different coefficient rings");
  }
}

// Exact quotient a / b over Z[t] (both with min_exp >= 0); throws if inexact.
LaurentPoly exact_div_int(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return a;
  if (a.min_exp() < 0 || b.min_exp() < 0) throw std::logic_error("exact_div_int expects polynomials");
  std::vector<std::int64_t> rem(static_cast<std::size_t>(a.max_exp() + 1), 0);
  for (std::int64_t e = a.min_exp(); e <= a.max_exp(); ++e) rem[e] = a.coefficient(e);
  const std::int64_t db = b.max_exp();
  if (a.max_exp() < db) throw std::logic_error("inexact polynomial division");
  std::vector<std::int64_t> quot(static_cast<std::size_t>(a.max_exp() - db + 1), 0);
  const std::int64_t lead = b.leading_coefficient();
  for (std::int64_t e = a.max_exp(); e >= db; --e) {
    const std::int64_t c = rem[e];
    if (c == 0) continue;
    if (c % lead != 0) throw std::logic_error("inexact polynomial division");
    const std::int64_t q = c / lead;
    quot[e - db] = q;
    for (std::int64_t k = b.min_exp(); k <= db; ++k) {
      rem[e - db + k] = checked_add(rem[e - db + k], -checked_mul(q, b.coefficient(k)));
    }
  }
  if (std::any_of(rem.begin(), rem.end(), [](std::int64_t c) { return c != 0; })) {
    throw std::logic_error("inexact polynomial division");
  }
  return LaurentPoly(LaurentPoly::kIntegers, 0, std::move(quot));
}

}  // namespace

LaurentPoly::LaurentPoly(std::int64_t modulus, std::int64_t min_exp, std::vector<std::int64_t> coeffs)
    : modulus_(modulus), min_exp_(min_exp), coeffs_(std::move(coeffs)) {
  if (modulus_ < 0 || modulus_ == 1 || modulus_ >= (std::int64_t{1} << 31)) {
    throw poly_error(Errc::ModulusMismatch, "modulus must be 0 (integers) or a prime below 2^31");
  }
  for (auto& c : coeffs_) c = reduce(c);
  trim();
}

LaurentPoly LaurentPoly::constant(std::int64_t c, std::int64_t modulus) { return LaurentPoly(modulus, 0, {c}); }

LaurentPoly LaurentPoly::monomial(std::int64_t c, std::int64_t exp, std::int64_t modulus) {
  return LaurentPoly(modulus, exp, {c});
}

LaurentPoly LaurentPoly::from_ascending(std::vector<std::int64_t> coeffs, std::int64_t modulus) {
  return LaurentPoly(modulus, 0, std::move(coeffs));
}

std::int64_t LaurentPoly::reduce(std::int64_t c) const {
  if (modulus_ == kIntegers) return c;
  c %= modulus_;
  return c < 0 ? c + modulus_ : c;
}

void LaurentPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    min_exp_ += static_cast<std::int64_t>(lead);
  }
  if (coeffs_.empty()) min_exp_ = 0;
}

std::int64_t LaurentPoly::coefficient(std::int64_t exp) const {
  if (is_zero() || exp < min_exp_ || exp > max_exp()) return 0;
  return coeffs_[static_cast<std::size_t>(exp - min_exp_)];
}

LaurentPoly LaurentPoly::shifted(std::int64_t k) const {
  LaurentPoly out = *this;
  if (!out.is_zero()) out.min_exp_ += k;
  return out;
}

LaurentPoly LaurentPoly::inverted_variable() const {
  if (is_zero()) return *this;
  std::vector<std::int64_t> rev(coeffs_.rbegin(), coeffs_.rend());
  return LaurentPoly(modulus_, -max_exp(), std::move(rev));
}

LaurentPoly LaurentPoly::scaled(std::int64_t c) const {
  std::vector<std::int64_t> out(coeffs_.size());
  const std::int64_t rc = reduce(c);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = modulus_ == kIntegers ? checked_mul(coeffs_[i], rc) : (coeffs_[i] * rc) % modulus_;
  }
  return LaurentPoly(modulus_, min_exp_, std::move(out));
}

LaurentPoly LaurentPoly::reduced_mod(std::int64_t p) const {
  if (!over_integers()) throw poly_error(Errc::ModulusMismatch, "reduction needs integer coefficients");
  return LaurentPoly(p, min_exp_, coeffs_);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  check_same_modulus(*this, o);
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const std::int64_t lo = std::min(min_exp_, o.min_exp_);
  const std::int64_t hi = std::max(max_exp(), o.max_exp());
  std::vector<std::int64_t> out(static_cast<std::size_t>(hi - lo + 1), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[min_exp_ - lo + static_cast<std::int64_t>(i)] = coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
    auto& slot = out[o.min_exp_ - lo + static_cast<std::int64_t>(i)];
    slot = modulus_ == kIntegers ? checked_add(slot, o.coeffs_[i]) : (slot + o.coeffs_[i]) % modulus_;
  }
  min_exp_ = lo;
  coeffs_ = std::move(out);
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  check_same_modulus(a, b);
  if (a.is_zero() || b.is_zero()) return LaurentPoly(a.modulus_);
  std::vector<std::int64_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      if (a.modulus_ == LaurentPoly::kIntegers) {
        out[i + j] = checked_add(out[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
      } else {
        out[i + j] = (out[i + j] + a.coeffs_[i] * b.coeffs_[j]) % a.modulus_;
      }
    }
  }
  return LaurentPoly(a.modulus_, a.min_exp_ + b.min_exp_, std::move(out));
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::int64_t e = max_exp(); e >= min_exp_; --e) {
    std::int64_t c = coefficient(e);
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    if (c != 1 || e == 0) out += std::to_string(c);
    if (e != 0) {
      out += 't';
      if (e != 1) out += '^' + std::to_string(e);
    }
  }
  return out;
}

LaurentPoly lp_normalize(const LaurentPoly& f) {
  if (f.is_zero()) return f;
  LaurentPoly g = f.shifted(-f.min_exp());
  if (f.over_integers()) return g.leading_coefficient() < 0 ? -g : g;
  return g.scaled(mod_inverse(g.lowest_coefficient(), f.modulus()));
}

Degree lp_degree(const LaurentPoly& f) {
  if (f.is_zero()) return Degree::minus_infinity();
  return Degree(f.max_exp() - f.min_exp());
}

bool equal_up_to_units(const LaurentPoly& f, const LaurentPoly& g) {
  return f.modulus() == g.modulus() && lp_normalize(f) == lp_normalize(g);
}

bool is_monic(const LaurentPoly& f) {
  if (f.is_zero()) return false;
  const auto lead = lp_normalize(f).leading_coefficient();
  return f.over_integers() ? lead == 1 : (lead == 1 || lead == f.modulus() - 1);
}

std::pair<LaurentPoly, LaurentPoly> poly_divmod(const LaurentPoly& a, const LaurentPoly& b) {
  check_same_modulus(a, b);
  if (a.over_integers()) throw poly_error(Errc::ModulusMismatch, "poly_divmod works over F_p");
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if ((!a.is_zero() && a.min_exp() < 0) || b.min_exp() < 0) {
    throw std::domain_error("poly_divmod expects ordinary polynomials");
  }
  const std::int64_t p = a.modulus();
  if (a.is_zero() || a.max_exp() < b.max_exp()) return {LaurentPoly(p), a};

  std::vector<std::int64_t> rem(static_cast<std::size_t>(a.max_exp() + 1), 0);
  for (std::int64_t e = a.min_exp(); e <= a.max_exp(); ++e) rem[e] = a.coefficient(e);
  const std::int64_t db = b.max_exp();
  const std::int64_t inv_lead = mod_inverse(b.leading_coefficient(), p);
  std::vector<std::int64_t> quot(static_cast<std::size_t>(a.max_exp() - db + 1), 0);
  for (std::int64_t e = a.max_exp(); e >= db; --e) {
    const std::int64_t c = rem[e];
    if (c == 0) continue;
    const std::int64_t q = c * inv_lead % p;
    quot[e - db] = q;
    for (std::int64_t k = b.min_exp(); k <= db; ++k) {
      rem[e - db + k] = ((rem[e - db + k] - q * b.coefficient(k)) % p + p) % p;
    }
  }
  return {LaurentPoly(p, 0, std::move(quot)), LaurentPoly(p, 0, std::move(rem))};
}

LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly x = a, y = b;
  while (!y.is_zero()) {
    auto r = poly_divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x.scaled(mod_inverse(x.leading_coefficient(), x.modulus()));
}

bool laurent_divides(const LaurentPoly& a, const LaurentPoly& b) {
  check_same_modulus(a, b);
  if (b.is_zero()) return true;
  if (a.is_zero()) return false;
  const auto aa = a.shifted(-a.min_exp());
  const auto bb = b.shifted(-b.min_exp());
  return poly_divmod(bb, aa).second.is_zero();
}

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols, std::int64_t modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), entries_(rows * cols, LaurentPoly(modulus)) {}

PolyMatrix PolyMatrix::identity(std::size_t n, std::int64_t modulus) {
  PolyMatrix m(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(1, modulus);
  return m;
}

PolyMatrix PolyMatrix::without_column(std::size_t c) const {
  PolyMatrix out(rows_, cols_ - 1, modulus_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0, k = 0; j < cols_; ++j) {
      if (j != c) out.at(i, k++) = at(i, j);
    }
  }
  return out;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const LaurentPoly& f) { return f.is_zero(); });
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.modulus() != b.modulus()) throw poly_error(Errc::ModulusMismatch, "matrix moduli differ");
  if (a.cols() != b.rows()) throw poly_error(Errc::DegreeMismatch, "matrix dimensions do not chain");
  PolyMatrix out(a.rows(), b.cols(), a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const auto& bkj = b.at(k, j);
        if (!bkj.is_zero()) out.at(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

LaurentPoly det_int_poly(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw poly_error(Errc::DegreeMismatch, "determinant of a non-square matrix");
  if (m.modulus() != LaurentPoly::kIntegers) {
    throw poly_error(Errc::ModulusMismatch, "det_int_poly expects integer coefficients");
  }
  const std::size_t n = m.rows();
  if (n == 0) return LaurentPoly::constant(1);

  // Multiply each column by the unit t^k making it polynomial.
  std::vector<std::vector<LaurentPoly>> a(n, std::vector<LaurentPoly>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::int64_t lo = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!m.at(i, j).is_zero()) lo = std::min(lo, m.at(i, j).min_exp());
    }
    for (std::size_t i = 0; i < n; ++i) a[i][j] = m.at(i, j).shifted(-lo);
  }

  // Bareiss: after step k every entry below/right of the pivot is a k+1 minor.
  bool negate = false;
  LaurentPoly prev = LaurentPoly::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k].is_zero()) ++swap;
      if (swap == n) return LaurentPoly();
      std::swap(a[k], a[swap]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = exact_div_int(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
      }
      a[i][k] = LaurentPoly();
    }
    prev = a[k][k];
  }
  LaurentPoly det = a[n - 1][n - 1];
  if (negate) det = -det;
  return lp_normalize(det);
}

PolyJson to_poly_json(const LaurentPoly& f) {
  if (f.is_zero()) return {0, {}};
  return {f.min_exp(), f.coeffs()};
}

LaurentPoly from_poly_json(const PolyJson& j, std::int64_t modulus) {
  return LaurentPoly(modulus, j.min_exp, j.coeffs);
}

}  // namespace fibrcheck
