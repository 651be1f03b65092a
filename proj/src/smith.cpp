#include <algorithm>
#include <cstdint>
#include <vector>

#include "fibrcheck/error.hpp"
#include "fibrcheck/polymat.hpp"

namespace fibrcheck {

namespace {

// Dense F_p[t] polynomial: ascending coefficients, no trailing zeros.
using Fp = std::vector<std::uint32_t>;

class FpRing {
 public:
  explicit FpRing(std::uint64_t p) : p_(p) {}

  static void trim(Fp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }

  std::uint32_t inverse(std::uint32_t a) const {
    // a^(p-2) by square and multiply
    std::uint64_t result = 1, base = a % p_, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
  }

  // dst -= q * src
  void sub_mul(Fp& dst, const Fp& q, const Fp& src) const {
    if (q.empty() || src.empty()) return;
    const std::size_t need = q.size() + src.size() - 1;
    if (dst.size() < need) dst.resize(need, 0);
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      const std::uint64_t neg = p_ - q[i];
      for (std::size_t j = 0; j < src.size(); ++j) {
        dst[i + j] = static_cast<std::uint32_t>((dst[i + j] + neg * src[j]) % p_);
      }
    }
    trim(dst);
  }

  // a := a mod b, returns quotient
  Fp divmod(Fp& a, const Fp& b) const {
    if (a.size() < b.size()) return {};
    Fp q(a.size() - b.size() + 1, 0);
    const std::uint64_t inv_lead = inverse(b.back());
    for (std::size_t e = a.size(); e-- >= b.size();) {
      const std::uint64_t c = a[e];
      if (c == 0) continue;
      const std::uint64_t coef = c * inv_lead % p_;
      q[e - b.size() + 1] = static_cast<std::uint32_t>(coef);
      const std::uint64_t neg = p_ - coef;
      for (std::size_t k = 0; k < b.size(); ++k) {
        auto& slot = a[e - b.size() + 1 + k];
        slot = static_cast<std::uint32_t>((slot + neg * b[k]) % p_);
      }
    }
    trim(a);
    return q;
  }

  Fp mul(const Fp& a, const Fp& b) const {
    if (a.empty() || b.empty()) return {};
    Fp out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p_);
      }
    }
    trim(out);
    return out;
  }

  void make_monic(Fp& a) const {
    if (a.empty() || a.back() == 1) return;
    const std::uint64_t inv = inverse(a.back());
    for (auto& c : a) c = static_cast<std::uint32_t>(c * inv % p_);
  }

  Fp gcd(Fp a, Fp b) const {
    while (!b.empty()) {
      divmod(a, b);
      std::swap(a, b);
    }
    make_monic(a);
    return a;
  }

  Fp exact_quotient(Fp a, const Fp& b) const { return divmod(a, b); }

  bool divides(const Fp& a, Fp b) const {
    divmod(b, a);
    return b.empty();
  }

 private:
  std::uint64_t p_;
};

int degree(const Fp& a) { return static_cast<int>(a.size()) - 1; }

}  // namespace

SnfResult smith_normal_form(const PolyMatrix& m) {
  const std::int64_t p = m.modulus();
  if (p == LaurentPoly::kIntegers) {
    throw Error(Errc::ModulusMismatch, "polymat", "Smith normal form is computed over F_p[t] only");
  }
  const FpRing ring(static_cast<std::uint64_t>(p));
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();

  std::vector<Fp> a(rows * cols);
  auto at = [&](std::size_t i, std::size_t j) -> Fp& { return a[i * cols + j]; };
  for (std::size_t j = 0; j < cols; ++j) {
    std::int64_t lo = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (!m.at(i, j).is_zero()) lo = std::min(lo, m.at(i, j).min_exp());
    }
    for (std::size_t i = 0; i < rows; ++i) {
      const auto& f = m.at(i, j);
      if (f.is_zero()) continue;
      Fp& dst = at(i, j);
      dst.assign(static_cast<std::size_t>(f.max_exp() - lo + 1), 0);
      for (std::int64_t e = f.min_exp(); e <= f.max_exp(); ++e) {
        dst[static_cast<std::size_t>(e - lo)] = static_cast<std::uint32_t>(f.coefficient(e));
      }
    }
  }

  auto swap_rows = [&](std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(at(r1, j), at(r2, j));
  };
  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, c1), at(i, c2));
  };

  std::vector<Fp> diagonal;
  for (std::size_t r = 0; r < std::min(rows, cols); ++r) {
    // Pivot: least degree, leftmost column, then topmost row.
    std::size_t pi = rows, pj = cols;
    int best = -1;
    for (std::size_t j = r; j < cols && best != 0; ++j) {
      for (std::size_t i = r; i < rows; ++i) {
        const Fp& e = at(i, j);
        if (e.empty()) continue;
        if (best < 0 || degree(e) < best) {
          best = degree(e);
          pi = i;
          pj = j;
          if (best == 0) break;
        }
      }
    }
    if (best < 0) break;
    swap_rows(r, pi);
    swap_cols(r, pj);

    for (;;) {
      bool leftover = false;
      const Fp pivot = at(r, r);
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (at(i, r).empty()) continue;
        Fp rem = at(i, r);
        const Fp q = ring.divmod(rem, pivot);
        for (std::size_t j = r + 1; j < cols; ++j) {
          if (!at(r, j).empty()) ring.sub_mul(at(i, j), q, at(r, j));
        }
        at(i, r) = std::move(rem);
        leftover = leftover || !at(i, r).empty();
      }
      for (std::size_t j = r + 1; j < cols; ++j) {
        if (at(r, j).empty()) continue;
        Fp rem = at(r, j);
        const Fp q = ring.divmod(rem, pivot);
        for (std::size_t i = r + 1; i < rows; ++i) {
          if (!at(i, r).empty()) ring.sub_mul(at(i, j), q, at(i, r));
        }
        at(r, j) = std::move(rem);
        leftover = leftover || !at(r, j).empty();
      }
      if (!leftover) break;

      // A remainder of smaller degree than the pivot remains in row or column r.
      std::size_t bi = r, bj = r;
      int bdeg = degree(at(r, r));
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (!at(i, r).empty() && degree(at(i, r)) < bdeg) {
          bdeg = degree(at(i, r));
          bi = i;
          bj = r;
        }
      }
      for (std::size_t j = r + 1; j < cols; ++j) {
        if (!at(r, j).empty() && degree(at(r, j)) < bdeg) {
          bdeg = degree(at(r, j));
          bi = r;
          bj = j;
        }
      }
      swap_rows(r, bi);
      swap_cols(r, bj);
    }
    diagonal.push_back(at(r, r));
  }

  // Diagonal to divisibility chain: (d_i, d_j) -> (gcd, lcm).
  for (auto& d : diagonal) ring.make_monic(d);
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    if (diagonal[i].size() == 1) continue;
    for (std::size_t j = i + 1; j < diagonal.size(); ++j) {
      if (ring.divides(diagonal[i], diagonal[j])) continue;
      Fp g = ring.gcd(diagonal[i], diagonal[j]);
      Fp l = ring.exact_quotient(ring.mul(diagonal[i], diagonal[j]), g);
      ring.make_monic(l);
      diagonal[i] = std::move(g);
      diagonal[j] = std::move(l);
      if (diagonal[i].size() == 1) break;
    }
  }

  SnfResult result;
  result.rank = diagonal.size();
  for (const Fp& d : diagonal) {
    result.divisors.emplace_back(p, 0, std::vector<std::int64_t>(d.begin(), d.end()));
  }
  return result;
}

}  // namespace fibrcheck
