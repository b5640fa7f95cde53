#include "kmz/gcm.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <queue>
#include <sstream>

#include "kmz/error.hpp"
#include "kmz/linalg.hpp"

namespace kmz {

namespace {

std::string entry_name(std::size_t i, std::size_t j) {
  return "a(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

std::string describe_cycle(const std::vector<std::size_t>& cycle) {
  std::string s;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    if (k) s += "->";
    s += std::to_string(cycle[k] + 1);
  }
  return s;
}

// Path from node up to the BFS root (inclusive).
std::vector<std::size_t> path_to_root(std::size_t node, const std::vector<std::size_t>& parent) {
  std::vector<std::size_t> path{node};
  while (parent[path.back()] != path.back()) path.push_back(parent[path.back()]);
  return path;
}

// Exact positive-semidefiniteness test with symmetric pivoting. Returns
// {psd, rank}; rank is meaningful only when psd holds.
std::pair<bool, std::size_t> psd_rank(RatMatrix b) {
  const std::size_t n = b.rows();
  std::vector<bool> done(n, false);
  std::size_t rank = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (sgn(b(i, i)) < 0) return {false, 0};
      if (sgn(b(i, i)) > 0 && p == n) p = i;
    }
    if (p == n) {
      // All remaining diagonal entries vanish; PSD forces the rest to be zero.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && sgn(b(i, j)) != 0) return {false, 0};
      return {true, rank};
    }
    done[p] = true;
    ++rank;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      Rational f = b(i, p) / b(p, p);
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) b(i, j) -= f * b(p, j);
    }
  }
  return {true, rank};
}

RatMatrix symmetrized_matrix(const CartanMatrix& a) {
  RatMatrix b(a.rank(), a.rank());
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.rank(); ++j) b(i, j) = Rational(a.symmetrized(i, j));
  return b;
}

// Finite/affine/indefinite without the hyperbolic flag.
Kind definiteness(const CartanMatrix& a) {
  RatMatrix b = symmetrized_matrix(a);
  bool leading_positive = true;
  for (std::size_t k = 1; k <= a.rank() && leading_positive; ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    leading_positive = sgn(determinant(b.submatrix(idx, idx))) > 0;
  }
  if (leading_positive) return Kind::Finite;
  auto [psd, r] = psd_rank(b);
  if (psd && a.rank() - r == 1) return Kind::Affine;
  return Kind::Indefinite;
}

}  // namespace

std::vector<std::vector<long>> CartanMatrix::rows() const {
  std::vector<std::vector<long>> out(size_, std::vector<long>(size_));
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

std::vector<std::vector<std::size_t>> CartanMatrix::components() const {
  std::vector<std::vector<std::size_t>> comps;
  std::vector<bool> seen(size_, false);
  for (std::size_t s = 0; s < size_; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      std::size_t i = q.front();
      q.pop();
      comp.push_back(i);
      for (std::size_t j = 0; j < size_; ++j)
        if (!seen[j] && j != i && (*this)(i, j) != 0) {
          seen[j] = true;
          q.push(j);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool CartanMatrix::indecomposable() const { return components().size() == 1; }

CartanMatrix CartanMatrix::principal_submatrix(const std::vector<std::size_t>& indices) const {
  std::vector<std::vector<long>> sub(indices.size(), std::vector<long>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) sub[i][j] = (*this)(indices[i], indices[j]);
  return validate_gcm(sub);
}

CartanMatrix validate_gcm(const std::vector<std::vector<long>>& entries) {
  const std::size_t n = entries.size();
  if (n == 0) throw Error(Errc::AxiomViolation, "matrix is empty");
  for (std::size_t i = 0; i < n; ++i)
    if (entries[i].size() != n) throw Error(Errc::AxiomViolation, "matrix is not square (row " + std::to_string(i + 1) + ")");
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i][i] != 2) throw Error(Errc::AxiomViolation, "diagonal entry " + entry_name(i, i) + " must be 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (entries[i][j] > 0) throw Error(Errc::AxiomViolation, "off-diagonal entry " + entry_name(i, j) + " must be <= 0");
      if ((entries[i][j] == 0) != (entries[j][i] == 0))
        throw Error(Errc::AxiomViolation, entry_name(i, j) + " = 0 but " + entry_name(j, i) + " != 0 (or vice versa)");
    }
  }

  CartanMatrix a;
  a.size_ = n;
  a.entries_.reserve(n * n);
  for (const auto& row : entries) a.entries_.insert(a.entries_.end(), row.begin(), row.end());

  // Spanning-tree propagation: q_j = q_i a_ij / a_ji along tree edges.
  std::vector<Rational> q(n, Rational(0));
  std::vector<std::size_t> parent(n, n);
  for (const auto& comp : a.components()) {
    const std::size_t root = comp.front();
    q[root] = 1;
    parent[root] = root;
    std::queue<std::size_t> bfs;
    bfs.push(root);
    while (!bfs.empty()) {
      std::size_t i = bfs.front();
      bfs.pop();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || a(i, j) == 0) continue;
        if (parent[j] == n) {
          parent[j] = i;
          q[j] = q[i] * Rational(a(i, j)) / Rational(a(j, i));
          bfs.push(j);
        } else if (q[i] * a(i, j) != q[j] * a(j, i)) {
          // Non-tree edge fails: cycle root..i -> j..root.
          auto pi = path_to_root(i, parent);
          auto pj = path_to_root(j, parent);
          while (pi.size() > 1 && pj.size() > 1 && pi[pi.size() - 2] == pj[pj.size() - 2]) {
            pi.pop_back();
            pj.pop_back();
          }
          std::vector<std::size_t> cycle(pi.rbegin(), pi.rend());
          cycle.insert(cycle.end(), pj.begin(), pj.end() - 1);
          cycle.push_back(cycle.front());
          Integer forward = 1, backward = 1;
          for (std::size_t k = 0; k + 1 < cycle.size(); ++k) {
            forward *= a(cycle[k], cycle[k + 1]);
            backward *= a(cycle[k + 1], cycle[k]);
          }
          throw Error(Errc::NotSymmetrizable, "cycle " + describe_cycle(cycle) + " has products " +
                                                  to_string(forward) + " and " + to_string(backward));
        }
      }
    }
    // Normalize this component to coprime positive integers.
    Integer den = 1, g = 0;
    for (auto i : comp) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q[i].get_den_mpz_t());
    for (auto i : comp) {
      q[i] *= den;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q[i].get_num_mpz_t());
    }
    for (auto i : comp) q[i] /= g;
  }
  a.symmetrizer_.resize(n);
  for (std::size_t i = 0; i < n; ++i) a.symmetrizer_[i] = q[i].get_num();
  return a;
}

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::Finite: return "Finite";
    case Kind::Affine: return "Affine";
    case Kind::Indefinite: return "Indefinite";
  }
  return "?";
}

void require_indecomposable(const CartanMatrix& a) {
  if (!a.indecomposable()) throw Error(Errc::NotIndecomposable, "matrix is decomposable");
}

MatrixType classify(const CartanMatrix& a) {
  require_indecomposable(a);
  MatrixType t{definiteness(a), false};
  if (t.kind != Kind::Indefinite) return t;
  // Hyperbolic: every proper indecomposable principal submatrix is finite or affine.
  const std::size_t n = a.rank();
  bool hyperbolic = true;
  for (unsigned long mask = 1; mask + 1 < (1UL << n) && hyperbolic; ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1UL << i)) idx.push_back(i);
    CartanMatrix sub = a.principal_submatrix(idx);
    if (!sub.indecomposable()) continue;
    hyperbolic = definiteness(sub) != Kind::Indefinite;
  }
  t.hyperbolic = hyperbolic;
  return t;
}

std::vector<ComponentType> classify_components(const CartanMatrix& a) {
  std::vector<ComponentType> out;
  for (auto& comp : a.components()) out.push_back({comp, classify(a.principal_submatrix(comp))});
  return out;
}

CartanMatrix parse_gcm(std::istream& in) {
  long n = 0;
  if (!(in >> n) || n <= 0) throw Error(Errc::ParseError, "GCM: expected a positive size on the first line");
  std::vector<std::vector<long>> rows(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n)));
  for (auto& row : rows)
    for (auto& x : row)
      if (!(in >> x)) throw Error(Errc::ParseError, "GCM: expected " + std::to_string(n * n) + " integer entries");
  std::string extra;
  if (in >> extra) throw Error(Errc::ParseError, "GCM: trailing content '" + extra + "'");
  return validate_gcm(rows);
}

CartanMatrix parse_gcm_text(const std::string& text) {
  std::istringstream in(text);
  return parse_gcm(in);
}

std::string format_gcm(const CartanMatrix& a) {
  std::ostringstream out;
  out << a.rank() << '\n';
  for (std::size_t i = 0; i < a.rank(); ++i) {
    for (std::size_t j = 0; j < a.rank(); ++j) out << (j ? " " : "") << a(i, j);
    out << '\n';
  }
  return out.str();
}

}  // namespace kmz
