#include <doctest.h>

#include "fibrcheck/error.hpp"
#include "fibrcheck/polymat.hpp"
#include "support.hpp"

using namespace fibrcheck;
using fibrcheck::testing::P;
using fibrcheck::testing::random_poly;
using fibrcheck::testing::cofactor_det;
using fibrcheck::testing::random_matrix;
using fibrcheck::testing::random_unimodular;

namespace {

std::vector<LaurentPoly> normalized(const std::vector<LaurentPoly>& ds) {
  std::vector<LaurentPoly> out;
  for (const auto& d : ds) out.push_back(lp_normalize(d));
  return out;
}

// Determinantal divisors: gcd of all i x i minors, for small matrices.
LaurentPoly minors_gcd(const PolyMatrix& m, std::size_t size) {
  const std::int64_t p = m.modulus();
  LaurentPoly g(p);
  auto subsets = [&](std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) s.push_back(i);
      }
      out.push_back(s);
    }
    return out;
  };
  for (const auto& rs : subsets(m.rows())) {
    for (const auto& cs : subsets(m.cols())) {
      PolyMatrix sub(size, size, p);
      for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) sub.at(r, c) = m.at(rs[r], cs[c]);
      }
      auto d = cofactor_det(sub);
      if (d.is_zero()) continue;
      d = d.shifted(-d.min_exp());
      g = g.is_zero() ? lp_normalize(d) : poly_gcd(g, d);
    }
  }
  return g.is_zero() ? g : lp_normalize(g);
}

}  // namespace

TEST_CASE("lp_normalize") {
  CHECK(lp_normalize(LaurentPoly(0, -1, {1, -3, 1})) == P({1, -3, 1}));
  CHECK(lp_normalize(LaurentPoly(0, 3, {-1, 3, -1})) == P({1, -3, 1}));
  CHECK(lp_normalize(LaurentPoly(0, 2, {-2})) == P({2}));
  CHECK(lp_normalize(LaurentPoly(7, 1, {3, 3})) == P({1, 1}, 7));
  CHECK(lp_normalize(LaurentPoly(7)).is_zero());
}

TEST_CASE("degrees") {
  CHECK_FALSE(lp_degree(LaurentPoly()).is_finite());
  CHECK(lp_degree(LaurentPoly()).to_string() == "-inf");
  CHECK(lp_degree(LaurentPoly::monomial(5, -3)) == 0);
  CHECK(lp_degree(LaurentPoly(0, -1, {1, 0, 4})) == 2);
  CHECK(Degree(3) > Degree::minus_infinity());
}

TEST_CASE("laurent arithmetic") {
  const auto f = P({1, -3, 1});
  CHECK(f.to_string() == "t^2 - 3t + 1");
  CHECK(P({-1, 1}).to_string() == "t - 1");
  CHECK(LaurentPoly().to_string() == "0");
  CHECK(LaurentPoly(0, -1, {1}).to_string() == "t^-1");
  CHECK(f * P({1}) == f);
  CHECK((f - f).is_zero());
  CHECK(P({-1, 1}) * P({1, 1}) == P({-1, 0, 1}));
  CHECK(f.inverted_variable() == LaurentPoly(0, -2, {1, -3, 1}));
  CHECK(f.reduced_mod(3) == P({1, 0, 1}, 3));
  CHECK(P({5, 2}, 7) * P({3}, 7) == P({1, 6}, 7));
  CHECK_THROWS_AS(P({1}, 5) + P({1}, 7), Error);
  const auto big = LaurentPoly::constant(std::int64_t{1} << 62);
  CHECK_THROWS_AS(big * big, Error);
}

TEST_CASE("monic and unit equivalence") {
  CHECK(is_monic(P({1, -3, 1})));
  CHECK(is_monic(P({-1, 3, -1})));
  CHECK_FALSE(is_monic(P({2, -3, 2})));
  CHECK(is_monic(P({1, 1, 6}, 7)));  // 6 = -1 mod 7
  CHECK_FALSE(is_monic(P({1, 2}, 7)));
  CHECK(equal_up_to_units(LaurentPoly(0, 4, {-1, 1}), P({1, -1})));
  CHECK(equal_up_to_units(P({2, 4}, 5), P({3, 1}, 5)));
  CHECK_FALSE(equal_up_to_units(P({1, 2}), P({2, 4})));
}

TEST_CASE("polynomial division and gcd over F_p") {
  const auto [q, r] = poly_divmod(P({-1, 0, 1}, 5), P({-1, 1}, 5));
  CHECK(q == P({1, 1}, 5));
  CHECK(r.is_zero());
  CHECK(poly_gcd(P({-1, 0, 1}, 7), P({-2, 1, 1}, 7)) == P({-1, 1}, 7));
  CHECK(poly_gcd(LaurentPoly(7), P({3, 6}, 7)) == P({4, 1}, 7));
  CHECK(laurent_divides(LaurentPoly(0, -3, {1, 1}).reduced_mod(5), P({1, 0, 0, 1}, 5)));
  CHECK(laurent_divides(P({1}, 5), LaurentPoly(5)));
  CHECK_FALSE(laurent_divides(LaurentPoly(5), P({1}, 5)));
}

TEST_CASE("smith_normal_form examples") {
  const std::int64_t p = 5;
  PolyMatrix d(2, 2, p);
  d.at(0, 0) = P({-1, 1}, p);
  d.at(1, 1) = P({-1, 0, 1}, p);
  auto snf = smith_normal_form(d);
  CHECK(snf.rank == 2);
  CHECK(snf.divisors == std::vector<LaurentPoly>{P({-1, 1}, p), P({-1, 0, 1}, p)});

  PolyMatrix j(2, 2, p);
  j.at(0, 0) = P({0, 1}, p);
  j.at(0, 1) = P({1}, p);
  j.at(1, 1) = P({0, 1}, p);
  snf = smith_normal_form(j);
  CHECK(snf.divisors == std::vector<LaurentPoly>{P({1}, p), P({0, 0, 1}, p)});

  // diag(t, t+1) has invariant factors 1, t(t+1).
  PolyMatrix c(2, 2, p);
  c.at(0, 0) = P({0, 1}, p);
  c.at(1, 1) = P({1, 1}, p);
  snf = smith_normal_form(c);
  CHECK(snf.divisors == std::vector<LaurentPoly>{P({1}, p), P({0, 1, 1}, p)});

  CHECK(smith_normal_form(PolyMatrix(3, 2, p)).rank == 0);

  // Negative exponents are units.
  PolyMatrix l(1, 1, p);
  l.at(0, 0) = LaurentPoly(p, -2, {1, 1});
  CHECK(smith_normal_form(l).divisors == std::vector<LaurentPoly>{P({1, 1}, p)});
}

TEST_CASE("smith_normal_form properties on random matrices") {
  std::mt19937 rng(31337);
  const std::int64_t primes[] = {2, 3, 5, 7, 13};
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int iter = 0; iter < 200; ++iter) {
    const std::int64_t p = primes[iter % 5];
    const std::size_t rows = dim(rng), cols = dim(rng);
    const auto m = random_matrix(rng, rows, cols, p, 3, iter % 3 == 0);
    const auto snf = smith_normal_form(m);
    CAPTURE(iter);

    // Divisibility chain.
    for (std::size_t i = 0; i + 1 < snf.divisors.size(); ++i) {
      CHECK(laurent_divides(snf.divisors[i], snf.divisors[i + 1]));
    }
    CHECK(snf.divisors.size() == snf.rank);
    for (const auto& d : snf.divisors) CHECK_FALSE(d.is_zero());

    // Unimodular invariance.
    const auto u = random_unimodular(rng, rows, p);
    const auto v = random_unimodular(rng, cols, p);
    const auto snf2 = smith_normal_form(u * m * v);
    CHECK(snf2.rank == snf.rank);
    CHECK(normalized(snf2.divisors) == normalized(snf.divisors));

    // Product of the first i divisors is the gcd of the i x i minors.
    LaurentPoly prefix = LaurentPoly::constant(1, p);
    for (std::size_t i = 0; i < snf.rank; ++i) {
      prefix = prefix * snf.divisors[i];
      CHECK(lp_normalize(prefix) == minors_gcd(m, i + 1));
    }
    if (snf.rank < std::min(rows, cols)) CHECK(minors_gcd(m, snf.rank + 1).is_zero());

    // Square: product equals the determinant up to units.
    if (rows == cols) {
      const auto det = cofactor_det(m);
      if (det.is_zero()) {
        CHECK(snf.rank < rows);
      } else {
        CHECK(equal_up_to_units(prefix, det));
      }
    }
  }
}

TEST_CASE("det_int_poly agrees with cofactor expansion") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<std::int64_t> coef(-4, 4);
  std::uniform_int_distribution<int> deg(0, 2), shift(-1, 1);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 1 + iter % 4;
    PolyMatrix m(n, n, LaurentPoly::kIntegers);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::int64_t> cs(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& x : cs) x = coef(rng);
        m.at(r, c) = LaurentPoly(LaurentPoly::kIntegers, shift(rng), cs);
      }
    }
    CHECK(det_int_poly(m) == lp_normalize(cofactor_det(m)));
  }
  PolyMatrix a(2, 2, LaurentPoly::kIntegers);
  a.at(0, 0) = P({-1, 1});
  a.at(1, 1) = P({1, 1});
  CHECK(det_int_poly(a) == P({-1, 0, 1}));
}

TEST_CASE("lp_normalize is constant on unit orbits") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<std::int64_t> k(-5, 5);
  for (int iter = 0; iter < 200; ++iter) {
    const std::int64_t p = iter % 2 == 0 ? 11 : LaurentPoly::kIntegers;
    LaurentPoly f = p == 11 ? random_poly(rng, 11, 5, static_cast<int>(k(rng)))
                            : LaurentPoly(0, k(rng), {k(rng), k(rng), 1, k(rng)});
    const auto base = lp_normalize(f);
    const std::int64_t c = p == 11 ? 1 + (iter % 10) : (iter % 4 < 2 ? 1 : -1);
    CHECK(lp_normalize(f * LaurentPoly::monomial(c, k(rng), p)) == base);
    CHECK(lp_normalize(base) == base);
  }
}

TEST_CASE("poly json round trip") {
  const LaurentPoly f(0, -2, {1, -3, 1});
  const auto j = to_poly_json(f);
  CHECK(j.min_exp == -2);
  CHECK(from_poly_json(j, 0) == f);
}
