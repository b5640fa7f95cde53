#include "kmz/hwmodule.hpp"

#include <algorithm>
#include <functional>

namespace kmz {

RootVec FWord::content(std::size_t rank) const {
  RootVec c(rank);
  for (auto i : letters) ++c[i];
  return c;
}

std::string to_string(const FWord& w) {
  std::string s = "[";
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(w.letters[k] + 1);
  }
  return s + "]";
}

VectorV VectorV::basis_vector(const RootVec& beta, std::size_t dim, std::size_t k) {
  VectorV v;
  RatVector c(dim);
  c[k] = 1;
  v.components_.emplace(beta, std::move(c));
  return v;
}

RatVector VectorV::component(const RootVec& beta) const {
  auto it = components_.find(beta);
  return it == components_.end() ? RatVector{} : it->second;
}

std::vector<RootVec> VectorV::support() const {
  std::vector<RootVec> s;
  for (const auto& [beta, c] : components_) s.push_back(beta);
  return s;
}

void VectorV::add(const RootVec& beta, const RatVector& coords, const Rational& scale) {
  if (sgn(scale) == 0 || kmz::is_zero(coords)) return;
  auto it = components_.find(beta);
  if (it == components_.end()) {
    RatVector c = coords;
    if (scale != 1)
      for (auto& x : c) x *= scale;
    components_.emplace(beta, std::move(c));
    return;
  }
  auto& dst = it->second;
  if (dst.size() != coords.size()) throw Error(Errc::Internal, "dimension mismatch at " + to_string(beta));
  for (std::size_t k = 0; k < dst.size(); ++k)
    if (sgn(coords[k]) != 0) dst[k] += scale * coords[k];
  if (kmz::is_zero(dst)) components_.erase(it);
}

VectorV& VectorV::operator+=(const VectorV& rhs) {
  for (const auto& [beta, c] : rhs.components_) add(beta, c);
  return *this;
}

VectorV& VectorV::operator-=(const VectorV& rhs) {
  for (const auto& [beta, c] : rhs.components_) add(beta, c, -1);
  return *this;
}

VectorV& VectorV::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    components_.clear();
    return *this;
  }
  for (auto& [beta, c] : components_)
    for (auto& x : c) x *= s;
  return *this;
}

VectorV VectorV::operator+(const VectorV& rhs) const {
  VectorV r = *this;
  r += rhs;
  return r;
}

VectorV VectorV::operator-(const VectorV& rhs) const {
  VectorV r = *this;
  r -= rhs;
  return r;
}

VectorV VectorV::operator*(const Rational& s) const {
  VectorV r = *this;
  r *= s;
  return r;
}

ModuleTruncation::ModuleTruncation(const CartanMatrix& a, const LambdaData& lam, std::int64_t depth)
    : ModuleTruncation(a, lam, depth, Options{}) {}

ModuleTruncation::ModuleTruncation(const CartanMatrix& a, const LambdaData& lam, std::int64_t depth, Options options)
    : a_(a), lam_(lam), options_(options), depth_(depth) {
  require_indecomposable(a_);
  validate_lambda(lam_, a_.rank());
  if (depth < 0) throw Error(Errc::InvalidArgument, "depth must be nonnegative");
  oracle_ = std::make_shared<MultiplicityOracle>(a_, lam_);
}

std::int64_t ModuleTruncation::depth() const {
  std::lock_guard lock(mutex_);
  return depth_;
}

void ModuleTruncation::extend_depth(std::int64_t depth) {
  std::lock_guard lock(mutex_);
  depth_ = std::max(depth_, depth);
}

bool ModuleTruncation::is_materialized(const RootVec& beta) const {
  std::lock_guard lock(mutex_);
  return spaces_.count(beta) > 0;
}

std::vector<RootVec> ModuleTruncation::materialized() const {
  std::lock_guard lock(mutex_);
  std::vector<RootVec> out;
  for (const auto& [beta, s] : spaces_) out.push_back(beta);
  return out;
}

const WeightSpace& ModuleTruncation::space(const RootVec& beta) const {
  std::lock_guard lock(mutex_);
  if (beta.rank() != a_.rank()) throw Error(Errc::InvalidArgument, "depth vector has wrong rank");
  if (!beta.is_nonnegative()) throw Error(Errc::InvalidArgument, "depth " + to_string(beta) + " has a negative coordinate");
  if (auto it = spaces_.find(beta); it != spaces_.end()) return *it->second;
  if (beta.height() > depth_)
    throw Error(Errc::DepthExceeded, "depth " + to_string(beta) + " exceeds truncation depth " + std::to_string(depth_));
  return build(beta);
}

void ModuleTruncation::materialize_all() const {
  std::lock_guard lock(mutex_);
  const std::size_t n = a_.rank();
  for (std::int64_t h = 0; h <= depth_; ++h) {
    RootVec v(n);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t pos, std::int64_t left) {
      if (pos + 1 == n) {
        v[pos] = left;
        space(v);
        return;
      }
      for (std::int64_t x = 0; x <= left; ++x) {
        v[pos] = x;
        rec(pos + 1, left - x);
      }
    };
    rec(0, h);
  }
}

const WeightSpace& ModuleTruncation::build(const RootVec& beta) const {
  WeightSpace ws;
  if (options_.oracle_zero_shortcut && !beta.is_zero() && oracle_->mult(beta) == 0) {
    ws.beta = beta;
    ws.zero_from_oracle = true;
    ws.f_from_below.resize(a_.rank());
    ws.e_to_below.resize(a_.rank());
  } else {
    ws = build_gram(beta);
  }
  auto [it, inserted] = spaces_.emplace(beta, std::make_unique<WeightSpace>(std::move(ws)));
  return *it->second;
}

WeightSpace ModuleTruncation::build_gram(const RootVec& beta) const {
  const std::size_t n = a_.rank();
  WeightSpace ws;
  ws.beta = beta;
  ws.f_from_below.resize(n);
  ws.e_to_below.resize(n);
  if (beta.is_zero()) {
    ws.dim = 1;
    ws.basis_words = {FWord{}};
    ws.gram = RatMatrix::identity(1);
    ws.lattice = RatMatrix::identity(1);
    return ws;
  }

  // Candidates f_j b for b in the basis of V_{beta - alpha_j}.
  struct Block {
    std::size_t j;
    const WeightSpace* low;
    std::size_t offset;
  };
  std::vector<Block> blocks;
  std::size_t total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (beta[j] == 0) continue;
    const WeightSpace& low = space(beta - RootVec::simple(n, j));
    if (low.dim == 0) continue;
    blocks.push_back({j, &low, total});
    total += low.dim;
  }
  if (total == 0) return ws;

  // e_j (f_k b') = f_k e_j b' + delta_jk h_j b', in coordinates of V_{beta - alpha_j};
  // pairing with the lower Gram gives <f_j b, f_k b'>.
  std::vector<std::vector<RatMatrix>> e_blocks(blocks.size());
  RatMatrix cand(total, total);
  for (std::size_t x = 0; x < blocks.size(); ++x) {
    const Block& bj = blocks[x];
    const RootVec low_j = beta - RootVec::simple(n, bj.j);
    for (const auto& bk : blocks) {
      RatMatrix m(bj.low->dim, bk.low->dim);
      RootVec both = low_j - RootVec::simple(n, bk.j);
      if (both.is_nonnegative()) {
        const WeightSpace& mid = space(both);
        if (mid.dim > 0) m = bj.low->f_from_below[bk.j] * bk.low->e_to_below[bj.j];
      }
      if (bj.j == bk.j) {
        Rational p(weight_pairing(a_, lam_, bj.j, low_j));
        for (std::size_t r = 0; r < m.rows(); ++r) m(r, r) += p;
      }
      RatMatrix block = bj.low->gram * m;
      for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t c = 0; c < block.cols(); ++c) cand(bj.offset + r, bk.offset + c) = block(r, c);
      e_blocks[x].push_back(std::move(m));
    }
  }

  // The form is nondegenerate on V, so candidate relations are Gram column relations.
  ColumnRelations rel = column_relations(cand);
  const std::vector<std::size_t>& basis = rel.pivots;
  ws.dim = basis.size();
  if (ws.dim == 0) return ws;
  const auto block_of = [&](std::size_t idx) {
    return static_cast<std::size_t>(
        std::find_if(blocks.rbegin(), blocks.rend(), [&](const Block& b) { return b.offset <= idx; }).base() -
        blocks.begin() - 1);
  };
  for (auto idx : basis) {
    const Block& blk = blocks[block_of(idx)];
    FWord w{{blk.j}};
    const auto& tail = blk.low->basis_words[idx - blk.offset].letters;
    w.letters.insert(w.letters.end(), tail.begin(), tail.end());
    ws.basis_words.push_back(std::move(w));
  }
  ws.gram = cand.submatrix(basis, basis);

  for (std::size_t x = 0; x < blocks.size(); ++x) {
    const Block& blk = blocks[x];
    std::vector<std::size_t> cols(blk.low->dim);
    for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = blk.offset + k;
    std::vector<std::size_t> all_rows(ws.dim);
    for (std::size_t k = 0; k < ws.dim; ++k) all_rows[k] = k;
    ws.f_from_below[blk.j] = rel.coefficients.submatrix(all_rows, cols);
    RatMatrix e(blk.low->dim, ws.dim);
    for (std::size_t c = 0; c < ws.dim; ++c) {
      const std::size_t y = block_of(basis[c]);
      const RatMatrix& m = e_blocks[x][y];
      const std::size_t local = basis[c] - blocks[y].offset;
      for (std::size_t r = 0; r < m.rows(); ++r) e(r, c) = m(r, local);
    }
    ws.e_to_below[blk.j] = std::move(e);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (beta[j] == 0 || !ws.f_from_below[j].empty()) continue;
    const WeightSpace& low = space(beta - RootVec::simple(n, j));
    ws.f_from_below[j] = RatMatrix(ws.dim, low.dim);
    ws.e_to_below[j] = RatMatrix(low.dim, ws.dim);
  }

  // V_{beta,Z} = sum over j, m >= 1 of f_j^{(m)} V_{beta - m alpha_j, Z}.
  std::vector<RatVector> gens;
  for (std::size_t j = 0; j < n; ++j) {
    RatMatrix power = ws.f_from_below[j];  // f_j^m : V_{beta - m alpha_j} -> V_beta (undivided)
    if (power.empty()) continue;
    for (std::int64_t m = 1; m <= beta[j]; ++m) {
      RootVec src = beta - RootVec::simple(n, j) * m;
      const WeightSpace& s = space(src);
      if (s.dim == 0) break;
      RatMatrix divided = power;
      divided *= fraction(1, factorial(static_cast<unsigned long>(m)));
      RatMatrix image = divided * s.lattice;
      for (std::size_t c = 0; c < image.cols(); ++c) gens.push_back(image.column(c));
      if (m == beta[j]) break;
      const WeightSpace& next = space(src);
      if (next.f_from_below[j].empty()) break;
      power = power * next.f_from_below[j];
    }
  }
  ws.lattice = hermite_normal_form(ws.dim, gens);
  return ws;
}

namespace {

using WordCombo = std::map<FWord, Rational>;

// e_i applied to the word f_{j1} ... f_{jk} v_lambda.
WordCombo apply_e_to_word(const CartanMatrix& a, const LambdaData& lam, std::size_t i, const FWord& w) {
  WordCombo out;
  const std::size_t n = a.rank();
  RootVec suffix(n);  // content of letters after position p
  for (std::size_t p = w.letters.size(); p-- > 0;) {
    if (w.letters[p] == i) {
      std::int64_t h = weight_pairing(a, lam, i, suffix);
      if (h != 0) {
        FWord shorter = w;
        shorter.letters.erase(shorter.letters.begin() + static_cast<long>(p));
        out[shorter] += h;
      }
    }
    ++suffix[w.letters[p]];
  }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

Rational form_rec(const CartanMatrix& a, const LambdaData& lam, const FWord& u, const FWord& v,
                  std::map<std::pair<FWord, FWord>, Rational>& memo) {
  if (u.letters.empty()) return v.letters.empty() ? Rational(1) : Rational(0);
  auto key = std::make_pair(u, v);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  FWord rest{{u.letters.begin() + 1, u.letters.end()}};
  Rational total = 0;
  for (const auto& [word, coeff] : apply_e_to_word(a, lam, u.letters.front(), v))
    total += coeff * form_rec(a, lam, rest, word, memo);
  memo.emplace(key, total);
  return total;
}

}  // namespace

Rational contravariant_form(const ModuleTruncation& trunc, const FWord& u, const FWord& v) {
  if (u.content(trunc.rank()) != v.content(trunc.rank()))
    throw Error(Errc::ContentMismatch, to_string(u) + " and " + to_string(v) + " have different contents");
  std::map<std::pair<FWord, FWord>, Rational> memo;
  return form_rec(trunc.gcm(), trunc.lambda(), u, v, memo);
}

const WeightSpace& build_weight_space(const ModuleTruncation& trunc, const RootVec& beta) { return trunc.space(beta); }

std::size_t multiplicity(const ModuleTruncation& trunc, const RootVec& beta) { return trunc.space(beta).dim; }

VectorV highest_weight_vector(const ModuleTruncation& trunc) {
  return VectorV::basis_vector(RootVec(trunc.rank()), 1, 0);
}

VectorV word_vector(const ModuleTruncation& trunc, const FWord& w) {
  VectorV v = highest_weight_vector(trunc);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) v = act_f(trunc, *it, v);
  return v;
}

VectorV act_f(const ModuleTruncation& trunc, std::size_t i, const VectorV& v) {
  if (i >= trunc.rank()) throw Error(Errc::InvalidArgument, "simple root index out of range");
  VectorV out;
  for (const auto& [beta, coords] : v.components()) {
    RootVec target = beta + RootVec::simple(trunc.rank(), i);
    if (target.height() > trunc.depth() && !trunc.is_materialized(target)) {
      if (trunc.oracle().mult(target) == 0) continue;
      throw TruncationOverflow(target, std::nullopt,
                               "f_" + std::to_string(i + 1) + " leaves the truncation at nonzero weight depth " + to_string(target));
    }
    const WeightSpace& ts = trunc.space(target);
    if (ts.dim == 0) continue;
    out.add(target, ts.f_from_below[i] * coords);
  }
  return out;
}

VectorV act_e(const ModuleTruncation& trunc, std::size_t i, const VectorV& v) {
  if (i >= trunc.rank()) throw Error(Errc::InvalidArgument, "simple root index out of range");
  VectorV out;
  for (const auto& [beta, coords] : v.components()) {
    if (beta[i] == 0) continue;
    const WeightSpace& src = trunc.space(beta);
    const auto& e = src.e_to_below[i];
    if (e.empty() || e.rows() == 0) continue;
    out.add(beta - RootVec::simple(trunc.rank(), i), e * coords);
  }
  return out;
}

VectorV divided_power_act(const ModuleTruncation& trunc, Sign sign, std::size_t i, std::uint64_t m, const VectorV& v) {
  VectorV cur = v;
  for (std::uint64_t k = 1; k <= m && !cur.is_zero(); ++k) {
    cur = sign == Sign::Plus ? act_e(trunc, i, cur) : act_f(trunc, i, cur);
    cur *= fraction(1, static_cast<unsigned long>(k));
  }
  return cur;
}

MembershipResult membership_VZ(const ModuleTruncation& trunc, const VectorV& v) {
  MembershipResult res;
  for (const auto& [beta, coords] : v.components()) {
    const WeightSpace& s = trunc.space(beta);
    RatVector x = lattice_coordinates(s.lattice, coords);
    for (std::size_t k = 0; k < x.size() && res.member; ++k)
      if (!is_integral(x[k])) {
        res.member = false;
        res.first_failure = std::make_tuple(beta, k, x[k]);
      }
    res.solutions.emplace(beta, std::move(x));
  }
  return res;
}

std::int64_t string_bound(const ModuleTruncation& trunc, const RootVec& beta, std::size_t i) {
  return std::max<std::int64_t>(0, beta[i] + weight_pairing(trunc.gcm(), trunc.lambda(), i, beta));
}

StringExtent string_extent(const ModuleTruncation& trunc, const RootVec& beta, std::size_t i) {
  StringExtent ext;
  const RootVec step = RootVec::simple(trunc.rank(), i);
  while (ext.up < beta[i] && trunc.oracle().is_weight(beta - step * (ext.up + 1))) ++ext.up;
  ext.down = std::max<std::int64_t>(0, ext.up + weight_pairing(trunc.gcm(), trunc.lambda(), i, beta));
  return ext;
}

}  // namespace kmz
