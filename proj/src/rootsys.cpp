#include "kmz/rootsys.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "kmz/error.hpp"
#include "kmz/lambda.hpp"

namespace kmz {

RootVec RootVec::simple(std::size_t rank, std::size_t i) {
  RootVec v(rank);
  v.coords[i] = 1;
  return v;
}

std::int64_t RootVec::height() const { return std::accumulate(coords.begin(), coords.end(), std::int64_t{0}); }

bool RootVec::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](auto x) { return x == 0; });
}

bool RootVec::is_nonnegative() const {
  return std::all_of(coords.begin(), coords.end(), [](auto x) { return x >= 0; });
}

bool RootVec::is_positive() const { return is_nonnegative() && !is_zero(); }

bool RootVec::is_negative() const {
  return !is_zero() && std::all_of(coords.begin(), coords.end(), [](auto x) { return x <= 0; });
}

bool RootVec::dominated_by(const RootVec& other) const {
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] > other.coords[i]) return false;
  return true;
}

RootVec RootVec::operator+(const RootVec& o) const {
  RootVec r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
  return r;
}

RootVec RootVec::operator-(const RootVec& o) const {
  RootVec r = *this;
  for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
  return r;
}

RootVec RootVec::operator-() const { return *this * -1; }

RootVec RootVec::operator*(std::int64_t k) const {
  RootVec r = *this;
  for (auto& x : r.coords) x *= k;
  return r;
}

std::string to_string(const RootVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v.coords[i]);
  }
  return s + ")";
}

WeylWord WeylWord::inverse() const { return {{letters.rbegin(), letters.rend()}}; }

WeylWord WeylWord::append(std::size_t i) const {
  WeylWord w = *this;
  w.letters.push_back(i);
  return w;
}

WeylWord WeylWord::prefix(std::size_t k) const { return {{letters.begin(), letters.begin() + static_cast<long>(k)}}; }

WeylWord WeylWord::suffix_from(std::size_t k) const { return {{letters.begin() + static_cast<long>(k), letters.end()}}; }

std::string to_string(const WeylWord& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w.letters[i] + 1);
  }
  return s + ")";
}

std::vector<RootVec> InversionSet::roots() const {
  std::vector<RootVec> r;
  for (const auto& e : entries) r.push_back(e.root);
  return r;
}

void validate_lambda(const LambdaData& lam, std::size_t rank) {
  if (lam.n.size() != rank)
    throw Error(Errc::InvalidArgument, "lambda has " + std::to_string(lam.n.size()) + " entries, expected " + std::to_string(rank));
  for (auto x : lam.n)
    if (x < 1) throw Error(Errc::InvalidArgument, "lambda must be dominant regular (every n_i >= 1)");
}

std::int64_t simple_pairing(const CartanMatrix& a, std::size_t i, const RootVec& beta) {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < a.rank(); ++j) s += a(i, j) * beta[j];
  return s;
}

RootVec reflect_root(const CartanMatrix& a, std::size_t i, const RootVec& beta) {
  RootVec r = beta;
  r[i] -= simple_pairing(a, i, beta);
  return r;
}

RootVec weyl_act_root(const CartanMatrix& a, const WeylWord& w, const RootVec& beta) {
  RootVec r = beta;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r = reflect_root(a, *it, r);
  return r;
}

std::map<RootVec, RootWitness> real_roots_up_to_height(const CartanMatrix& a, std::int64_t max_height) {
  const std::size_t n = a.rank();
  std::map<RootVec, RootWitness> found;
  std::map<RootVec, RootWitness> layer;
  if (max_height < 1) return found;
  for (std::size_t i = 0; i < n; ++i) layer.emplace(RootVec::simple(n, i), RootWitness{{}, i});
  auto full_word = [](const RootWitness& w) { return w.word.append(w.index); };
  while (!layer.empty()) {
    found.insert(layer.begin(), layer.end());
    std::map<RootVec, RootWitness> next;
    for (const auto& [root, wit] : layer) {
      for (std::size_t j = 0; j < n; ++j) {
        RootVec r = reflect_root(a, j, root);
        if (!r.is_positive() || r.height() > max_height || found.count(r)) continue;
        RootWitness cand{WeylWord{{j}}, wit.index};
        cand.word.letters.insert(cand.word.letters.end(), wit.word.letters.begin(), wit.word.letters.end());
        auto it = next.find(r);
        if (it == next.end())
          next.emplace(r, cand);
        else if (full_word(cand) < full_word(it->second))
          it->second = cand;
      }
    }
    layer = std::move(next);
  }
  return found;
}

RootWitness canonical_witness(const CartanMatrix& a, const RootVec& beta) {
  if (!beta.is_positive()) throw Error(Errc::NotRealRoot, to_string(beta) + " is not a positive root");
  auto roots = real_roots_up_to_height(a, beta.height());
  auto it = roots.find(beta);
  if (it == roots.end()) throw Error(Errc::NotRealRoot, to_string(beta) + " is not a real root");
  return it->second;
}

namespace {

std::vector<RootVec> prefix_roots(const CartanMatrix& a, const WeylWord& w) {
  std::vector<RootVec> out;
  for (std::size_t k = 0; k < w.length(); ++k)
    out.push_back(weyl_act_root(a, w.prefix(k), RootVec::simple(a.rank(), w.letters[k])));
  return out;
}

}  // namespace

bool is_reduced(const CartanMatrix& a, const WeylWord& w) {
  for (auto x : w.letters)
    if (x >= a.rank()) throw Error(Errc::InvalidArgument, "word letter out of range");
  auto roots = prefix_roots(a, w);
  std::set<RootVec> seen;
  for (const auto& r : roots)
    if (!r.is_positive() || !seen.insert(r).second) return false;
  return true;
}

InversionSet inversion_set(const CartanMatrix& a, const WeylWord& w) {
  if (!is_reduced(a, w)) throw Error(Errc::NotReduced, to_string(w) + " is not reduced");
  InversionSet inv;
  auto roots = prefix_roots(a, w);
  for (std::size_t k = 0; k < w.length(); ++k) inv.entries.push_back({roots[k], w.prefix(k), w.letters[k]});
  return inv;
}

WeylWord find_word_containing_root(const CartanMatrix& a, const RootVec& beta) {
  RootWitness wit = canonical_witness(a, beta);
  return wit.word.append(wit.index);
}

std::vector<WeylWord> reduced_words_up_to(const CartanMatrix& a, std::size_t max_length) {
  std::vector<WeylWord> out{WeylWord{}};
  std::vector<WeylWord> frontier{WeylWord{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<WeylWord> next;
    for (const auto& w : frontier)
      for (std::size_t i = 0; i < a.rank(); ++i) {
        WeylWord c = w.append(i);
        // Appending keeps earlier prefix roots; only the new one needs checking.
        if (is_reduced(a, c)) next.push_back(std::move(c));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::int64_t weight_pairing(const CartanMatrix& a, const LambdaData& lam, std::size_t i, const RootVec& beta) {
  return lam.n[i] - simple_pairing(a, i, beta);
}

RootVec weyl_act_weight_depth(const CartanMatrix& a, const LambdaData& lam, const WeylWord& w, const RootVec& beta) {
  RootVec d = beta;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) d[*it] += weight_pairing(a, lam, *it, d);
  return d;
}

std::int64_t coroot_pairing(const CartanMatrix& a, const LambdaData& lam, const RootVec& beta, const RootWitness& alpha) {
  RootVec d = weyl_act_weight_depth(a, lam, alpha.word.inverse(), beta);
  return weight_pairing(a, lam, alpha.index, d);
}

}  // namespace kmz
