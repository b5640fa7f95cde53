#include <functional>

#include "doctest.h"
#include "kmz/error.hpp"
#include "kmz/oracle.hpp"
#include "support.hpp"

using namespace kmz;
using namespace kmz::test;

namespace {

// Weyl dimension formula for finite type: prod over positive roots of
// (lambda + rho, alpha) / (rho, alpha), with positive roots from the reflection closure.
Rational weyl_dimension(const CartanMatrix& a, const LambdaData& lam) {
  Rational d = 1;
  for (const auto& [alpha, _] : real_roots_up_to_height(a, 64)) {
    Integer num = 0, den = 0;
    for (std::size_t i = 0; i < a.rank(); ++i) {
      // (lambda + rho, alpha) with (Lambda_i, alpha_j) = q_j delta_ij
      num += (lam.n[i] + 1) * a.symmetrizer()[i] * alpha[i];
      den += a.symmetrizer()[i] * alpha[i];
    }
    d *= fraction(num, den);
  }
  return d;
}

Integer total_dimension(const CartanMatrix& a, const LambdaData& lam) {
  MultiplicityOracle o(a, lam);
  Integer total = 1;
  for (std::int64_t h = 1;; ++h) {
    Integer layer = 0;
    RootVec v(a.rank());
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t pos, std::int64_t left) {
      if (pos + 1 == a.rank()) {
        v[pos] = left;
        layer += o.mult(v);
        return;
      }
      for (std::int64_t x = 0; x <= left; ++x) {
        v[pos] = x;
        rec(pos + 1, left - x);
      }
    };
    rec(0, h);
    if (layer == 0) return total;
    total += layer;
  }
}

}  // namespace

TEST_CASE("Peterson examples") {
  auto t = peterson_mults(a2(), 4);
  CHECK(t.roots().size() == 3);
  for (const auto& [r, m] : t.roots()) CHECK(m == 1);
  CHECK(peterson_mults(affine(), 2).mult({1, 1}) == 1);
  CHECK(peterson_mults(hyperbolic(), 2).mult({1, 1}) == 1);
  CHECK(peterson_mults(a2(), 2).mult({2, 0}) == 0);
  CHECK_THROWS_AS(t.mult({3, 2}), Error);
}

TEST_CASE("finite types have exactly their real roots") {
  for (const auto& a : {a2(), validate_gcm({{2, -1}, {-2, 2}}), validate_gcm({{2, -1}, {-3, 2}}),
                        validate_gcm({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})}) {
    auto t = peterson_mults(a, 8);
    auto real = real_roots_up_to_height(a, 8);
    REQUIRE(t.roots().size() == real.size());
    for (const auto& [r, m] : t.roots()) {
      CHECK(real.count(r) == 1);
      CHECK(m == 1);
    }
  }
}

TEST_CASE("affine imaginary roots have multiplicity rank minus one") {
  auto t = peterson_mults(affine(), 12);
  for (std::int64_t k = 1; k <= 6; ++k) CHECK(t.mult({k, k}) == 1);
  auto a21 = validate_gcm({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}});
  auto t3 = peterson_mults(a21, 9);
  for (std::int64_t k = 1; k <= 3; ++k) CHECK(t3.mult({k, k, k}) == 2);
  auto twisted = validate_gcm({{2, -1}, {-4, 2}});
  auto tt = peterson_mults(twisted, 12);
  CHECK(classify(twisted).kind == Kind::Affine);
  // delta = (1,2) spans the kernel
  for (std::int64_t k = 1; k <= 4; ++k) CHECK(tt.mult({k, 2 * k}) == 1);
}

TEST_CASE("root multiplicities are Weyl invariant") {
  for (const auto& a : {hyperbolic(), validate_gcm({{2, -4}, {-4, 2}}), validate_gcm({{2, -2}, {-3, 2}})}) {
    const std::int64_t h = 16;
    auto t = peterson_mults(a, h);
    for (const auto& [r, m] : t.roots()) {
      CHECK(m > 0);
      for (std::size_t i = 0; i < a.rank(); ++i) {
        RootVec img = reflect_root(a, i, r);
        if (img.is_negative() || img.height() > h) continue;
        CAPTURE(to_string(r));
        CHECK(t.mult(img) == m);
      }
    }
  }
}

TEST_CASE("Freudenthal examples") {
  auto t = peterson_mults(a2(), 4);
  std::map<RootVec, Integer> memo;
  CHECK(freudenthal_mult(a2(), ones(), {0, 0}, t, memo) == 1);
  CHECK(freudenthal_mult(a2(), ones(), {1, 1}, t, memo) == 2);
  CHECK_THROWS_AS(freudenthal_mult(a2(), ones(), {3, 2}, t, memo), Error);
  for (std::int64_t n = 1; n <= 6; ++n) {
    auto ts = peterson_mults(sl2(), 8);
    std::map<RootVec, Integer> ms;
    for (std::int64_t m = 0; m <= 8; ++m) CHECK(freudenthal_mult(sl2(), {{n}}, RootVec{m}, ts, ms) == (m <= n ? 1 : 0));
  }
}

TEST_CASE("finite-type totals match the Weyl dimension formula") {
  std::vector<CartanMatrix> types{a2(), validate_gcm({{2, -1}, {-2, 2}}), validate_gcm({{2, -1}, {-3, 2}}),
                                  validate_gcm({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})};
  for (const auto& a : types) {
    for (std::int64_t x = 1; x <= 2; ++x)
      for (std::int64_t y = 1; y <= 2; ++y) {
        LambdaData lam{std::vector<std::int64_t>(a.rank(), 1)};
        lam.n[0] = x;
        lam.n[1] = y;
        CHECK(Rational(total_dimension(a, lam)) == weyl_dimension(a, lam));
      }
  }
  CHECK(total_dimension(a2(), ones()) == 8);
}

TEST_CASE("weight multiplicities are Weyl invariant") {
  for (const auto& a : {a2(), affine(), hyperbolic()}) {
    MultiplicityOracle o(a, {{2, 1}});
    for (std::int64_t x = 0; x <= 4; ++x)
      for (std::int64_t y = 0; x + y <= 4; ++y) {
        RootVec beta{x, y};
        for (std::size_t i = 0; i < 2; ++i) {
          RootVec img = weyl_act_weight_depth(a, {{2, 1}}, WeylWord{{i}}, beta);
          if (!img.is_nonnegative() || img.height() > 8) continue;
          CHECK(o.mult(img) == o.mult(beta));
        }
      }
  }
}
