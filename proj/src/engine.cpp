#include "kmz/engine.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kmz {

GroupWord GroupWord::inverse() const {
  GroupWord inv;
  inv.atoms.reserve(atoms.size());
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) inv.atoms.push_back({it->sign, it->index, -it->t});
  return inv;
}

GroupWord GroupWord::operator*(const GroupWord& rhs) const {
  GroupWord g = *this;
  g *= rhs;
  return g;
}

GroupWord& GroupWord::operator*=(const GroupWord& rhs) {
  atoms.insert(atoms.end(), rhs.atoms.begin(), rhs.atoms.end());
  return *this;
}

GroupWord atom_word(Sign sign, std::size_t i, const Rational& t) { return GroupWord{{GroupAtom{sign, i, t}}}; }

GroupWord wtilde_simple(std::size_t i, const Rational& t) {
  if (sgn(t) == 0) throw Error(Errc::ZeroParameter, "w~_i(t) needs t != 0");
  return GroupWord{{{Sign::Plus, i, t}, {Sign::Minus, i, Rational(-1) / t}, {Sign::Plus, i, t}}};
}

GroupWord wtilde(const CartanMatrix& a, const WeylWord& w) {
  if (!is_reduced(a, w)) throw Error(Errc::NotReduced, to_string(w) + " is not reduced");
  GroupWord g;
  for (auto i : w.letters) g *= wtilde_simple(i);
  return g;
}

GroupWord h_element(std::size_t i, const Rational& t) {
  if (sgn(t) == 0) throw Error(Errc::ZeroParameter, "h_i(t) needs t != 0");
  return wtilde_simple(i, t) * wtilde_simple(i, 1).inverse();
}

namespace {

// Lift of an arbitrary (not necessarily reduced) word.
GroupWord lift(const WeylWord& w) {
  GroupWord g;
  for (auto i : w.letters) g *= wtilde_simple(i);
  return g;
}

}  // namespace

GroupWord chi_real_root(const CartanMatrix& a, const RootWitness& beta, const Rational& t, Sign sign) {
  if (beta.index >= a.rank()) throw Error(Errc::InvalidArgument, "witness index out of range");
  GroupWord conj = lift(beta.word);
  return conj * atom_word(sign, beta.index, t) * conj.inverse();
}

GroupWord wtilde_reflection(const CartanMatrix& a, const RootWitness& beta) {
  if (beta.index >= a.rank()) throw Error(Errc::InvalidArgument, "witness index out of range");
  GroupWord conj = lift(beta.word);
  return conj * wtilde_simple(beta.index) * conj.inverse();
}

namespace {

class WordParser {
 public:
  WordParser(const CartanMatrix& a, std::string_view text) : a_(a), text_(text) {}

  GroupWord parse() {
    GroupWord g;
    skip_space();
    while (pos_ < text_.size()) {
      g *= item();
      skip_space();
    }
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::ParseError, "group word at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::size_t index() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an index");
    const unsigned long i = std::stoul(std::string(text_.substr(start, pos_ - start)));
    if (i < 1 || i > a_.rank()) {
      pos_ = start;
      fail("index " + std::to_string(i) + " out of range 1.." + std::to_string(a_.rank()));
    }
    return i - 1;
  }

  Rational rational() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' ||
                                   text_[pos_] == '-' || text_[pos_] == '+'))
      ++pos_;
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const Error&) {
      pos_ = start;
      fail("expected a rational p/q");
    }
  }

  WeylWord word_until(char stop) {
    WeylWord w;
    skip_space();
    while (pos_ < text_.size() && text_[pos_] != stop) {
      w.letters.push_back(index());
      skip_space();
    }
    return w;
  }

  GroupWord item() {
    if (accept("x[")) {
      Sign sign;
      if (accept("+")) sign = Sign::Plus;
      else if (accept("-")) sign = Sign::Minus;
      else fail("expected + or -");
      const std::size_t i = index();
      expect("]");
      expect("(");
      Rational t = rational();
      expect(")");
      return atom_word(sign, i, t);
    }
    if (accept("wt(")) {
      WeylWord w = word_until(')');
      expect(")");
      return wtilde(a_, w);
    }
    if (accept("h(")) {
      const std::size_t i = index();
      expect(",");
      Rational t = rational();
      expect(")");
      return h_element(i, t);
    }
    if (accept("xr(")) {
      expect("w");
      expect("=");
      WeylWord w = word_until(',');
      expect(",");
      const std::size_t i = index();
      expect(",");
      Rational t = rational();
      expect(")");
      return chi_real_root(a_, RootWitness{w, i}, t);
    }
    fail("expected x[, wt(, h( or xr(");
  }

  const CartanMatrix& a_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupWord parse_group_word(const CartanMatrix& a, std::string_view text) { return WordParser(a, text).parse(); }

std::string to_string(const GroupWord& g) {
  std::ostringstream out;
  for (std::size_t k = 0; k < g.atoms.size(); ++k) {
    const auto& x = g.atoms[k];
    out << (k ? " " : "") << "x[" << (x.sign == Sign::Plus ? '+' : '-') << x.index + 1 << "](" << to_string(x.t) << ')';
  }
  return out.str();
}

bool is_reflection_triple(const GroupWord& g, std::size_t k) {
  if (k + 2 >= g.atoms.size()) return false;
  const auto& x = g.atoms[k];
  const auto& y = g.atoms[k + 1];
  const auto& z = g.atoms[k + 2];
  return x.sign == Sign::Plus && y.sign == Sign::Minus && z.sign == Sign::Plus && x.index == y.index &&
         y.index == z.index && sgn(x.t) != 0 && x.t == z.t && y.t == Rational(-1) / x.t;
}

VectorV apply_atom(const ModuleTruncation& trunc, const GroupAtom& atom, const VectorV& v) {
  if (sgn(atom.t) == 0) return v;
  VectorV out = v;
  for (const auto& [beta, coords] : v.components()) {
    VectorV term;
    term.add(beta, coords);
    // m is bounded by the string through beta; the loop stops at the first zero term.
    const std::int64_t bound = atom.sign == Sign::Minus ? string_bound(trunc, beta, atom.index) : beta[atom.index];
    Rational tpow = 1;
    for (std::int64_t m = 1; m <= bound; ++m) {
      term = atom.sign == Sign::Plus ? act_e(trunc, atom.index, term) : act_f(trunc, atom.index, term);
      if (term.is_zero()) break;
      term *= fraction(1, static_cast<unsigned long>(m));
      tpow *= atom.t;
      out += term * tpow;
    }
  }
  return out;
}

VectorV apply_word(const ModuleTruncation& trunc, const GroupWord& g, const VectorV& v) {
  VectorV cur = v;
  for (std::size_t k = g.atoms.size(); k-- > 0;) {
    try {
      cur = apply_atom(trunc, g.atoms[k], cur);
    } catch (const TruncationOverflow& e) {
      throw TruncationOverflow(e.weight(), k, e.detail() + " (atom " + std::to_string(k) + ")");
    }
  }
  return cur;
}

namespace {

RootVec reflect_depth(const ModuleTruncation& trunc, std::size_t i, const RootVec& beta) {
  RootVec r = beta;
  r[i] += weight_pairing(trunc.gcm(), trunc.lambda(), i, beta);
  return r;
}

}  // namespace

std::set<RootVec> weight_closure(const ModuleTruncation& trunc, const GroupWord& g, const std::set<RootVec>& support) {
  std::set<RootVec> current;
  for (const auto& b : support)
    if (trunc.oracle().is_weight(b)) current.insert(b);
  std::set<RootVec> touched = current;
  const std::size_t n = trunc.rank();
  std::size_t k = g.atoms.size();
  while (k > 0) {
    if (k >= 3 && is_reflection_triple(g, k - 3)) {
      const std::size_t i = g.atoms[k - 3].index;
      const RootVec step = RootVec::simple(n, i);
      std::set<RootVec> next;
      for (const auto& b : current) {
        StringExtent ext = string_extent(trunc, b, i);
        for (std::int64_t m = -ext.up; m <= ext.down; ++m) touched.insert(b + step * m);
        next.insert(reflect_depth(trunc, i, b));
      }
      current = std::move(next);
      k -= 3;
      continue;
    }
    const GroupAtom& atom = g.atoms[k - 1];
    --k;
    if (sgn(atom.t) == 0) continue;
    const RootVec step = RootVec::simple(n, atom.index);
    std::set<RootVec> added;
    for (const auto& b : current) {
      StringExtent ext = string_extent(trunc, b, atom.index);
      if (atom.sign == Sign::Minus)
        for (std::int64_t m = 1; m <= std::min(ext.down, string_bound(trunc, b, atom.index)); ++m) added.insert(b + step * m);
      else
        for (std::int64_t m = 1; m <= ext.up; ++m) added.insert(b - step * m);
    }
    current.insert(added.begin(), added.end());
    touched.insert(added.begin(), added.end());
  }
  return touched;
}

ClosurePlan plan_and_materialize(ModuleTruncation& trunc, const GroupWord& g, const std::set<RootVec>& support,
                                 std::int64_t margin) {
  ClosurePlan plan;
  plan.weights = weight_closure(trunc, g, support);
  for (const auto& b : plan.weights) plan.required_depth = std::max(plan.required_depth, b.height());
  if (plan.required_depth > trunc.depth()) trunc.extend_depth(plan.required_depth + margin);
  for (const auto& b : plan.weights) trunc.space(b);
  return plan;
}

std::uint64_t extraction_degree_bound(const ModuleTruncation& trunc, const RootWitness& beta, Sign sign, const VectorV& v) {
  const RootVec root = weyl_act_root(trunc.gcm(), beta.word, RootVec::simple(trunc.rank(), beta.index));
  std::int64_t bound = 0;
  for (const auto& [mu, coords] : v.components()) {
    // Steps toward v_lambda are limited by the depth coordinates.
    std::int64_t up = -1;
    for (std::size_t i = 0; i < root.rank(); ++i)
      if (root[i] > 0) up = up < 0 ? mu[i] / root[i] : std::min(up, mu[i] / root[i]);
    if (up < 0) up = 0;
    std::int64_t m = up;
    if (sign == Sign::Minus) m = std::max<std::int64_t>(0, up + coroot_pairing(trunc.gcm(), trunc.lambda(), mu, beta));
    bound = std::max(bound, m);
  }
  return static_cast<std::uint64_t>(bound);
}

VectorV divided_power_extract(const ModuleTruncation& trunc, const RootWitness& beta, Sign sign, std::uint64_t m,
                              const VectorV& v) {
  if (m == 0) return v;
  const std::uint64_t degree = extraction_degree_bound(trunc, beta, sign, v);
  if (m > degree) return VectorV();
  // Newton divided differences at nodes 0..degree; then convert to monomial
  // coefficients and keep the t^m one.
  std::vector<VectorV> values;
  values.reserve(degree + 1);
  for (std::uint64_t node = 0; node <= degree; ++node)
    values.push_back(apply_word(trunc, chi_real_root(trunc.gcm(), beta, Rational(static_cast<unsigned long>(node)), sign), v));
  // dd[k] = f[x_0..x_k] with x_j = j.
  std::vector<VectorV> dd = values;
  for (std::uint64_t level = 1; level <= degree; ++level)
    for (std::uint64_t j = degree; j >= level; --j) {
      dd[j] = (dd[j] - dd[j - 1]) * fraction(1, static_cast<unsigned long>(level));
      if (j == level) break;
    }
  // p(t) = sum_k dd[k] prod_{j<k} (t - j); expand the Newton basis into powers.
  // basis[k] holds the coefficients of prod_{j<k}(t - j).
  std::vector<Rational> poly{1};
  VectorV coeff;
  for (std::uint64_t k = 0; k <= degree; ++k) {
    if (k > 0) {
      std::vector<Rational> next(poly.size() + 1);
      for (std::size_t d = 0; d < poly.size(); ++d) {
        next[d + 1] += poly[d];
        next[d] -= poly[d] * Rational(static_cast<unsigned long>(k - 1));
      }
      poly = std::move(next);
    }
    if (m < poly.size() && sgn(poly[m]) != 0) coeff += dd[k] * poly[m];
  }
  return coeff;
}

VectorV conjugated_divided_power(const ModuleTruncation& trunc, const RootWitness& beta, Sign sign, std::uint64_t m,
                                 const VectorV& v) {
  GroupWord conj;
  for (auto i : beta.word.letters) conj *= wtilde_simple(i);
  VectorV x = apply_word(trunc, conj.inverse(), v);
  x = divided_power_act(trunc, sign, beta.index, m, x);
  return apply_word(trunc, conj, x);
}

}  // namespace kmz
