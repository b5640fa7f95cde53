#include "kmz/oracle.hpp"

#include <functional>

#include "kmz/error.hpp"

namespace kmz {

Integer root_form(const CartanMatrix& a, const RootVec& x, const RootVec& y) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (x[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < a.rank(); ++j) row += a(i, j) * y[j];
    s += a.symmetrizer()[i] * x[i] * row;
  }
  return s;
}

namespace {

Integer rho_form(const CartanMatrix& a, const RootVec& beta) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a.symmetrizer()[i] * beta[i];
  return s;
}

// Calls f on every nonzero vector v <= beta componentwise with v != beta.
void for_each_proper_part(const RootVec& beta, const std::function<void(const RootVec&)>& f) {
  RootVec v(beta.rank());
  while (true) {
    std::size_t i = 0;
    while (i < v.rank() && v[i] == beta[i]) {
      v[i] = 0;
      ++i;
    }
    if (i == v.rank()) return;
    ++v[i];
    if (v != beta) f(v);
  }
}

// Visits every nonnegative vector of exactly the given height (rank >= 1).
void for_each_of_height(std::size_t rank, std::int64_t h, const std::function<void(const RootVec&)>& f) {
  RootVec v(rank);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t pos, std::int64_t left) {
    if (pos + 1 == rank) {
      v[pos] = left;
      f(v);
      return;
    }
    for (std::int64_t x = 0; x <= left; ++x) {
      v[pos] = x;
      rec(pos + 1, left - x);
    }
  };
  rec(0, h);
}

}  // namespace

void RootMultTable::compute(const RootVec& beta) {
  const std::int64_t h = beta.height();
  Rational divisor_part = 0;  // sum_{n>=2} mult(beta/n)/n
  for (std::int64_t n = 2; n <= h; ++n) {
    bool divisible = true;
    for (auto x : beta.coords) divisible = divisible && x % n == 0;
    if (!divisible) continue;
    RootVec part = beta;
    for (auto& x : part.coords) x /= n;
    auto it = mults_.find(part);
    if (it != mults_.end()) divisor_part += fraction(it->second, n);
  }
  if (h == 1) {
    c_[beta] = 1;
    mults_[beta] = 1;
    return;
  }
  Integer den = root_form(a_, beta, beta) - 2 * rho_form(a_, beta);
  if (den == 0) {
    // (beta, beta) = 2(rho, beta) > 0 forces a real root with <rho, beta^vee> = 1,
    // i.e. a simple root; at height >= 2 beta is not a root.
    c_[beta] = divisor_part;
    return;
  }
  Rational sum = 0;
  for_each_proper_part(beta, [&](const RootVec& b1) {
    auto i1 = c_.find(b1);
    if (i1 == c_.end() || sgn(i1->second) == 0) return;
    auto i2 = c_.find(beta - b1);
    if (i2 == c_.end() || sgn(i2->second) == 0) return;
    sum += Rational(root_form(a_, b1, beta - b1)) * i1->second * i2->second;
  });
  Rational cb = sum / Rational(den);
  Rational m = cb - divisor_part;
  if (!is_integral(m) || m < 0)
    throw Error(Errc::Internal, "Peterson recurrence produced non-integral multiplicity at " + to_string(beta));
  c_[beta] = cb;
  if (m > 0) mults_[beta] = m.get_num();
}

void RootMultTable::extend_to(std::int64_t max_height) {
  for (std::int64_t h = height_ + 1; h <= max_height; ++h) {
    for_each_of_height(a_.rank(), h, [&](const RootVec& beta) { compute(beta); });
    height_ = h;
  }
}

Integer RootMultTable::mult(const RootVec& beta) const {
  if (beta.height() > height_) throw Error(Errc::HeightExceeded, to_string(beta) + " exceeds table height");
  auto it = mults_.find(beta);
  return it == mults_.end() ? Integer(0) : it->second;
}

RootMultTable peterson_mults(const CartanMatrix& a, std::int64_t max_height) {
  RootMultTable t(a);
  t.extend_to(max_height);
  return t;
}

Integer freudenthal_mult(const CartanMatrix& a, const LambdaData& lam, const RootVec& beta, const RootMultTable& table,
                         std::map<RootVec, Integer>& memo) {
  if (!beta.is_nonnegative()) return 0;
  if (beta.is_zero()) return 1;
  if (beta.height() > table.height()) throw Error(Errc::HeightExceeded, to_string(beta) + " exceeds table height");
  if (auto it = memo.find(beta); it != memo.end()) return it->second;

  // |lambda+rho|^2 - |lambda-beta+rho|^2 = 2(lambda+rho, beta) - (beta, beta)
  Integer lr_beta = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) lr_beta += a.symmetrizer()[i] * (lam.n[i] + 1) * beta[i];
  Integer den = 2 * lr_beta - root_form(a, beta, beta);
  Integer result = 0;
  // Weights mu != lambda of an integrable module have den > 0, so den <= 0
  // certifies that lambda - beta is not a weight.
  if (den > 0) {
    Integer sum = 0;
    for (const auto& [alpha, m] : table.roots()) {
      if (!alpha.dominated_by(beta)) continue;
      Integer lam_alpha = 0;
      for (std::size_t i = 0; i < a.rank(); ++i) lam_alpha += a.symmetrizer()[i] * lam.n[i] * alpha[i];
      const Integer beta_alpha = root_form(a, beta, alpha);
      const Integer alpha_alpha = root_form(a, alpha, alpha);
      for (std::int64_t k = 1;; ++k) {
        RootVec rest = beta - alpha * k;
        if (!rest.is_nonnegative()) break;
        Integer sub = freudenthal_mult(a, lam, rest, table, memo);
        if (sub == 0) continue;
        sum += m * sub * (lam_alpha - beta_alpha + k * alpha_alpha);
      }
    }
    Integer num = 2 * sum;
    if (num % den != 0) throw Error(Errc::Internal, "Freudenthal recursion not integral at " + to_string(beta));
    result = num / den;
  }
  memo.emplace(beta, result);
  return result;
}

MultiplicityOracle::MultiplicityOracle(const CartanMatrix& a, LambdaData lam) : a_(a), lam_(std::move(lam)), table_(a_) {
  validate_lambda(lam_, a_.rank());
}

Integer MultiplicityOracle::mult(const RootVec& beta) {
  std::lock_guard lock(mutex_);
  if (beta.height() > table_.height()) table_.extend_to(beta.height());
  return freudenthal_mult(a_, lam_, beta, table_, memo_);
}

}  // namespace kmz
