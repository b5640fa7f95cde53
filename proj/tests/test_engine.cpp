#include "doctest.h"
#include "kmz/engine.hpp"
#include "kmz/error.hpp"
#include "support.hpp"

using namespace kmz;
using namespace kmz::test;

namespace {

WeylWord word(std::initializer_list<std::size_t> one_based) {
  WeylWord w;
  for (auto i : one_based) w.letters.push_back(i - 1);
  return w;
}

VectorV fvec(const ModuleTruncation& m, std::initializer_list<std::size_t> one_based) {
  FWord w;
  for (auto i : one_based) w.letters.push_back(i - 1);
  return word_vector(m, w);
}

// Newton divided differences of the points (k, values[k]), k = 0..n-1.
std::vector<VectorV> divided_differences(std::vector<VectorV> values) {
  std::vector<VectorV> out{values[0]};
  for (std::size_t order = 1; order < values.size(); ++order) {
    for (std::size_t k = 0; k + order < values.size(); ++k)
      values[k] = (values[k + 1] - values[k]) * fraction(1, static_cast<unsigned long>(order));
    values.pop_back();
    out.push_back(values[0]);
  }
  return out;
}

// Plans g on the support and reports whether every touched weight stays within cap.
bool plan_within(ModuleTruncation& m, const GroupWord& g, const std::set<RootVec>& support, std::int64_t cap) {
  for (const auto& beta : weight_closure(m, g, support))
    if (beta.height() > cap) return false;
  plan_and_materialize(m, g, support, 0);
  return true;
}

}  // namespace

TEST_CASE("atom examples in sl2") {
  ModuleTruncation s(sl2(), {{2}}, 4);
  auto v = highest_weight_vector(s);
  const Rational t = q("-5/3");
  CHECK(apply_atom(s, {Sign::Plus, 0, t}, v) == v);
  auto f = fvec(s, {1});
  auto expect = v + f * t + fvec(s, {1, 1}) * (t * t / 2);
  CHECK(apply_atom(s, {Sign::Minus, 0, t}, v) == expect);
  CHECK(apply_atom(s, {Sign::Plus, 0, t}, f) == f + v * (2 * t));
  CHECK(apply_word(s, {}, f) == f);
}

TEST_CASE("compiled words have the documented shapes") {
  auto w1 = wtilde_simple(0);
  REQUIRE(w1.size() == 3);
  CHECK(w1.atoms[0] == GroupAtom{Sign::Plus, 0, 1});
  CHECK(w1.atoms[1] == GroupAtom{Sign::Minus, 0, -1});
  CHECK(w1.atoms[2] == GroupAtom{Sign::Plus, 0, 1});
  CHECK(is_reflection_triple(w1, 0));
  CHECK(wtilde(a2(), {}).empty());
  CHECK(wtilde(a2(), word({1, 2})).size() == 6);
  CHECK_THROWS_AS(wtilde(a2(), word({1, 1})), Error);
  CHECK(h_element(0, 3).size() == 6);
  CHECK_THROWS_AS(h_element(0, 0), Error);
  CHECK_THROWS_AS(wtilde_simple(0, 0), Error);
  CHECK(chi_real_root(a2(), {{}, 1}, 2).size() == 1);
  CHECK(chi_real_root(a2(), {word({1}), 1}, 2).size() == 7);
  auto g = wtilde(a2(), word({1, 2}));
  CHECK(g.inverse().inverse() == g);
  CHECK((g * g.inverse()).size() == 12);
}

TEST_CASE("reflection lifts on sl2") {
  ModuleTruncation s(sl2(), {{2}}, 4);
  auto v = highest_weight_vector(s);
  auto img = apply_word(s, wtilde_simple(0), v);
  auto half = fvec(s, {1, 1}) * q("1/2");
  CHECK((img == half || img == half * -1));
  auto m = membership_VZ(s, img);
  CHECK(m.member);
  auto& x = m.solutions.begin()->second;
  CHECK(abs(x[0]) == 1);
}

TEST_CASE("h elements act diagonally") {
  ModuleTruncation s(sl2(), {{2}}, 4);
  auto v = highest_weight_vector(s);
  CHECK(apply_word(s, h_element(0, 5), v) == v * 25);
  CHECK(apply_word(s, h_element(0, 5), fvec(s, {1})) == fvec(s, {1}));
  for (const auto& a : {a2(), affine(), hyperbolic()}) {
    ModuleTruncation m(a, ones(), 6);
    for (std::int64_t x = 0; x <= 2; ++x)
      for (std::int64_t y = 0; x + y <= 3; ++y) {
        RootVec beta{x, y};
        const auto& sp = m.space(beta);
        for (std::size_t k = 0; k < sp.dim; ++k) {
          auto b = VectorV::basis_vector(beta, sp.dim, k);
          for (std::size_t i = 0; i < 2; ++i)
            for (const auto& t : {q("2"), q("-1/3"), q("1")}) {
              if (!plan_within(m, h_element(i, t), {beta}, 12)) continue;
              auto p = weight_pairing(a, ones(), i, beta);
              Rational scale = p >= 0 ? pow(t, p) : 1 / pow(t, -p);
              CHECK(apply_word(m, h_element(i, t), b) == b * scale);
            }
        }
      }
  }
}

TEST_CASE("parameter additivity and inverse law") {
  for (const auto& a : {a2(), affine(), hyperbolic()}) {
    ModuleTruncation m(a, ones(), 8);
    for (std::int64_t x = 0; x <= 2; ++x)
      for (std::int64_t y = 0; x + y <= 2; ++y) {
        RootVec beta{x, y};
        const auto& sp = m.space(beta);
        for (std::size_t k = 0; k < sp.dim; ++k) {
          auto v = VectorV::basis_vector(beta, sp.dim, k);
          for (std::size_t i = 0; i < 2; ++i)
            for (auto s : {Sign::Plus, Sign::Minus}) {
              const Rational t1 = q("2/3"), t2 = q("-5/2");
              auto lhs = apply_word(m, atom_word(s, i, t1) * atom_word(s, i, t2), v);
              CHECK(lhs == apply_atom(m, {s, i, t1 + t2}, v));
              CHECK(apply_atom(m, {s, i, 0}, v) == v);
            }
          GroupWord g = wtilde(a, word({1, 2})) * atom_word(Sign::Minus, 0, q("3/2"));
          if (plan_within(m, g * g.inverse(), {beta}, 12)) CHECK(apply_word(m, g * g.inverse(), v) == v);
        }
      }
  }
}

TEST_CASE("atom coordinates are polynomials of bounded degree") {
  for (const auto& a : {a2(), affine()}) {
    ModuleTruncation m(a, ones(), 9);
    for (std::int64_t x = 0; x <= 2; ++x)
      for (std::int64_t y = 0; x + y <= 2; ++y) {
        RootVec beta{x, y};
        const auto& sp = m.space(beta);
        for (std::size_t k = 0; k < sp.dim; ++k) {
          auto v = VectorV::basis_vector(beta, sp.dim, k);
          for (std::size_t i = 0; i < 2; ++i) {
            const auto deg = static_cast<std::size_t>(string_bound(m, beta, i));
            std::vector<VectorV> vals;
            for (std::size_t t = 0; t < 2 * deg + 2; ++t)
              vals.push_back(apply_atom(m, {Sign::Minus, i, static_cast<long>(t)}, v));
            auto dd = divided_differences(vals);
            for (std::size_t order = deg + 1; order < dd.size(); ++order) CHECK(dd[order].is_zero());
            CHECK(dd[deg] == divided_power_act(m, Sign::Minus, i, deg, v));
          }
        }
      }
  }
}

TEST_CASE("weight closure") {
  ModuleTruncation s(sl2(), {{2}}, 4);
  std::set<RootVec> zero{RootVec{0}};
  CHECK(weight_closure(s, {}, zero) == zero);
  std::set<RootVec> string{RootVec{0}, RootVec{1}, RootVec{2}};
  CHECK(weight_closure(s, atom_word(Sign::Minus, 0, 1), zero) == string);
  CHECK(weight_closure(s, wtilde_simple(0), zero) == string);
}

TEST_CASE("real root groups fix the highest weight vector") {
  for (const auto& a : {a2(), affine(), hyperbolic()}) {
    ModuleTruncation m(a, ones(), 4);
    for (const auto& [root, wit] : real_roots_up_to_height(a, 4)) {
      auto g = chi_real_root(a, wit, q("7/3"));
      plan_and_materialize(m, g, {RootVec(2)}, 2);
      CHECK(apply_word(m, g, highest_weight_vector(m)) == highest_weight_vector(m));
    }
  }
}

TEST_CASE("reflection lifts preserve the lattice") {
  for (const auto& a : {a2(), affine(), hyperbolic()}) {
    ModuleTruncation m(a, ones(), 3);
    for (const auto& w : reduced_words_up_to(a, 3)) {
      auto g = wtilde(a, w);
      for (std::int64_t x = 0; x <= 1; ++x)
        for (std::int64_t y = 0; x + y <= 1; ++y) {
          RootVec beta{x, y};
          RootVec image = weyl_act_weight_depth(a, ones(), w, beta);
          if (!plan_within(m, g, {beta}, 12) || !plan_within(m, g.inverse(), {image}, 12)) continue;
          const auto& src = m.space(beta);
          const auto& dst = m.space(image);
          REQUIRE(src.dim == dst.dim);
          for (std::size_t c = 0; c < src.dim; ++c) {
            VectorV gen;
            gen.add(beta, src.lattice.column(c));
            auto out = apply_word(m, g, gen);
            CHECK(out.support() == std::vector<RootVec>{image});
            CHECK(membership_VZ(m, out).member);
            VectorV back;
            back.add(image, dst.lattice.column(c));
            CHECK(membership_VZ(m, apply_word(m, g.inverse(), back)).member);
          }
        }
    }
  }
}

TEST_CASE("w~ v_lambda is a lattice generator of its weight space") {
  for (const auto& a : {a2(), affine(), hyperbolic()}) {
    ModuleTruncation m(a, ones(), 3);
    for (const auto& w : reduced_words_up_to(a, 3)) {
      auto g = wtilde(a, w);
      plan_and_materialize(m, g, {RootVec(2)}, 1);
      auto img = apply_word(m, g, highest_weight_vector(m));
      REQUIRE(img.support().size() == 1);
      CHECK(img.support()[0] == weyl_act_weight_depth(a, ones(), w, RootVec(2)));
      auto res = membership_VZ(m, img);
      CHECK(res.member);
      auto& x = res.solutions.begin()->second;
      REQUIRE(x.size() == 1);
      CHECK(abs(x[0]) == 1);
    }
  }
}

TEST_CASE("divided power extraction") {
  ModuleTruncation m(a2(), ones(), 4);
  auto v = highest_weight_vector(m);
  RootWitness simple{{}, 0};
  CHECK(divided_power_extract(m, simple, Sign::Plus, 0, fvec(m, {1})) == fvec(m, {1}));
  for (std::uint64_t k = 0; k <= 2; ++k)
    CHECK(divided_power_extract(m, simple, Sign::Minus, k, v) == divided_power_act(m, Sign::Minus, 0, k, v));
  RootWitness beta{word({1}), 1};
  auto lifted = apply_word(m, wtilde_reflection(a2(), beta), v);
  auto back = divided_power_extract(m, beta, Sign::Plus, 2, lifted);
  CHECK((back == v || back == v * -1));
  CHECK(back == conjugated_divided_power(m, beta, Sign::Plus, 2, lifted));
  auto down = divided_power_extract(m, beta, Sign::Minus, 2, v);
  CHECK(down == conjugated_divided_power(m, beta, Sign::Minus, 2, v));
  CHECK(divided_power_extract(m, beta, Sign::Minus, 3, v).is_zero());
}

TEST_CASE("group word text") {
  const auto a = a2();
  auto g = parse_group_word(a, "x[+1](1/2) x[-2](-3)");
  REQUIRE(g.size() == 2);
  CHECK(g.atoms[0] == GroupAtom{Sign::Plus, 0, q("1/2")});
  CHECK(g.atoms[1] == GroupAtom{Sign::Minus, 1, -3});
  CHECK(parse_group_word(a, to_string(g)) == g);
  CHECK(parse_group_word(a, "wt(1 2)") == wtilde(a, word({1, 2})));
  CHECK(parse_group_word(a, "h(2, 3)") == h_element(1, 3));
  CHECK(parse_group_word(a, "xr(w=1, 2, 2/3)") == chi_real_root(a, {word({1}), 1}, q("2/3")));
  CHECK(parse_group_word(a, "").empty());
  for (const char* bad : {"x[+3](1)", "x[1](1)", "x[+1](1/0)", "y[+1](1)", "wt(1 1)", "h(1, 0)", "x[+1](1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_group_word(a, bad), Error);
  }
  try {
    parse_group_word(a, "x[+1](1) q");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("column 10") != std::string::npos);
  }
}

TEST_CASE("overflow names the failing atom") {
  ModuleTruncation s(sl2(), {{3}}, 1);
  auto g = atom_word(Sign::Minus, 0, 1) * atom_word(Sign::Plus, 0, 1);
  try {
    apply_word(s, g, highest_weight_vector(s));
    FAIL("expected overflow");
  } catch (const TruncationOverflow& e) {
    REQUIRE(e.atom());
    CHECK(*e.atom() == 0);
    CHECK(e.weight() == RootVec{2});
  }
}
