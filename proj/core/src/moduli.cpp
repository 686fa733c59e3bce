#include "hcox/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>

namespace hcox {

GramLikeMatrix::GramLikeMatrix(Mat entries) : a_(std::move(entries)) {
  if (a_.rows() != a_.cols() || a_.rows() < 2) throw InputError("GramLikeMatrix must be square, size >= 2");
  for (Eigen::Index i = 0; i < a_.rows(); ++i) {
    if (std::abs(a_(i, i) - 1.0) > 1e-12) throw InputError("GramLikeMatrix diagonal must be 1");
    a_(i, i) = 1.0;
    for (Eigen::Index j = 0; j < a_.cols(); ++j) {
      if (!std::isfinite(a_(i, j))) throw InputError("GramLikeMatrix entries must be finite");
      if (i != j && ((a_(i, j) == 0.0) != (a_(j, i) == 0.0)))
        throw InputError("GramLikeMatrix violates zero-symmetry at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
    }
  }
}

GramLikeMatrix symmetric_gram(const CoxeterGraph& j) { return GramLikeMatrix(cartan_matrix(j).entries()); }

GramLikeMatrix permuted(const GramLikeMatrix& a, std::span<const int> perm) {
  const int s = a.size();
  if (static_cast<int>(perm.size()) != s) throw InputError("permutation has wrong length");
  Mat b(s, s);
  for (int i = 0; i < s; ++i)
    for (int k = 0; k < s; ++k) b(perm[i], perm[k]) = a(i, k);
  return GramLikeMatrix(std::move(b));
}

StarReport check_star_J(const GramLikeMatrix& a, const CoxeterGraph& j) {
  if (a.size() != j.size()) throw InputError("check_star_J: shape mismatch");
  StarReport rep;
  auto fail = [&](int i, int k, const char* kind, double v) {
    rep.ok = false;
    rep.violations.push_back({i, k, kind, v});
  };
  for (int i = 0; i < a.size(); ++i)
    for (int k = i + 1; k < a.size(); ++k) {
      const double aik = a(i, k), aki = a(k, i);
      if (aik > 0.0 || aki > 0.0) fail(i, k, "positivity", std::max(aik, aki));
      const EdgeWeight w = j.weight(i, k);
      const double prod = aik * aki;
      if (w.is_infinite()) {
        if (prod < 1.0 - 1e-10) fail(i, k, "infinite-product", prod);
      } else if (w.value() == 2) {
        if (aik != 0.0 || aki != 0.0) fail(i, k, "zero", prod);
      } else if (std::abs(prod - w.cos_squared()) > 1e-10) {
        fail(i, k, "product", prod);
      }
    }
  return rep;
}

std::map<IndexCycle, double> cyclic_products(const GramLikeMatrix& a) {
  const int s = a.size();
  std::map<IndexCycle, double> out;
  for (int i = 0; i < s; ++i) out[{i}] = a(i, i);
  for (int i = 0; i < s; ++i)
    for (int k = i + 1; k < s; ++k) out[{i, k}] = a(i, k) * a(k, i);

  // Simple cycles through their smallest vertex; every orientation is visited once.
  std::vector<int> path;
  std::vector<char> used(static_cast<std::size_t>(s), 0);
  std::function<void(int)> extend = [&](int start) {
    const int last = path.back();
    if (path.size() >= 3 && a(last, start) != 0.0) {
      double prod = 1.0;
      for (std::size_t k = 0; k < path.size(); ++k) prod *= a(path[k], path[(k + 1) % path.size()]);
      out[path] = prod;
    }
    if (static_cast<int>(path.size()) == s) return;
    for (int nxt = start + 1; nxt < s; ++nxt) {
      if (used[nxt] || a(last, nxt) == 0.0) continue;
      used[nxt] = 1;
      path.push_back(nxt);
      extend(start);
      path.pop_back();
      used[nxt] = 0;
    }
  };
  for (int start = 0; start < s; ++start) {
    path = {start};
    used.assign(static_cast<std::size_t>(s), 0);
    used[start] = 1;
    extend(start);
  }
  return out;
}

DiagonalConjugator::DiagonalConjugator(Vec lambdas) : lambda_(std::move(lambdas)) {
  if (lambda_.size() == 0 || (lambda_.array() == 0.0).any())
    throw InputError("DiagonalConjugator needs nonzero lambdas");
  lambda_ /= lambda_(0);
}

Mat DiagonalConjugator::apply(const Mat& m) const {
  Mat out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = lambda_(i) * m(i, j) / lambda_(j);
  return out;
}

namespace {

bool close_rel(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
}

}  // namespace

std::optional<DiagonalConjugator> diag_equivalent(const GramLikeMatrix& a, const GramLikeMatrix& b) {
  if (a.size() != b.size()) throw InputError("diag_equivalent: shape mismatch");
  const int s = a.size();
  for (int i = 0; i < s; ++i)
    for (int k = 0; k < s; ++k)
      if ((a(i, k) == 0.0) != (b(i, k) == 0.0)) return std::nullopt;

  const auto pa = cyclic_products(a);
  const auto pb = cyclic_products(b);
  for (const auto& [cycle, value] : pa) {
    auto it = pb.find(cycle);
    if (it == pb.end() || !close_rel(value, it->second, 1e-9)) return std::nullopt;
  }

  // Breadth-first spanning forest of the support graph, roots at the smallest index.
  Vec lambda = Vec::Zero(s);
  std::vector<char> seen(static_cast<std::size_t>(s), 0);
  for (int root = 0; root < s; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    lambda(root) = 1.0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop_front();
      for (int k = 0; k < s; ++k) {
        if (seen[k] || k == i || a(i, k) == 0.0) continue;
        seen[k] = 1;
        lambda(k) = lambda(i) * a(i, k) / b(i, k);
        queue.push_back(k);
      }
    }
  }
  DiagonalConjugator conj(lambda);
  const Mat image = conj.apply(a.entries());
  for (int i = 0; i < s; ++i)
    for (int k = 0; k < s; ++k)
      if (!close_rel(image(i, k), b(i, k), 1e-10)) return std::nullopt;
  return conj;
}

std::vector<int> lanner_circuit(const CoxeterGraph& j) {
  if (classify(j).tag != GraphTag::Lanner) throw InputError("graph is not Lanner: " + j.to_spec());
  LoopInfo loop = find_loop(j);
  if (!loop.circuit) throw InputError("Lanner graph is not a circuit: " + j.to_spec());
  return *loop.circuit;
}

ModuliCoordinate moduli_coordinate(const GramLikeMatrix& a, const CoxeterGraph& j) {
  if (a.size() != j.size()) throw InputError("moduli_coordinate: shape mismatch");
  LoopInfo loop = find_loop(j);
  if (!loop.has_loop || !loop.circuit) throw InputError("moduli_coordinate: graph has no circuit");
  ModuliCoordinate mc;
  mc.circuit = *loop.circuit;
  const std::size_t len = mc.circuit.size();
  mc.phi = 1.0;
  mc.phi_tilde = 1.0;
  double cos2 = 1.0;
  for (std::size_t k = 0; k < len; ++k) {
    const int u = mc.circuit[k], v = mc.circuit[(k + 1) % len];
    mc.phi *= a(u, v);
    mc.phi_tilde *= a(v, u);
    cos2 *= j.weight(u, v).cos_squared();
  }
  mc.mu = std::abs(mc.phi) / cos2;
  return mc;
}

GramLikeMatrix family_matrix(const CoxeterGraph& j, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("family_matrix: t must be positive");
  const std::vector<int> c = lanner_circuit(j);
  Mat a = Mat::Identity(j.size(), j.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const int u = c[k], v = c[(k + 1) % c.size()];
    a(u, v) = -t * j.weight(u, v).cos_squared();
    a(v, u) = -1.0 / t;
  }
  return GramLikeMatrix(std::move(a));
}

double hyperbolic_parameter(const CoxeterGraph& j) {
  const std::vector<int> c = lanner_circuit(j);
  double log_sec = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k)
    log_sec -= std::log(j.weight(c[k], c[(k + 1) % c.size()]).cos_pi_over());
  const double th = std::exp(log_sec / static_cast<double>(c.size()));
  if (!diag_equivalent(family_matrix(j, th), symmetric_gram(j)))
    throw Error("hyperbolic_parameter: family matrix at t_h is not equivalent to the symmetric matrix");
  return th;
}

}  // namespace hcox
