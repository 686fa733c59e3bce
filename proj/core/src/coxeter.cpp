#include "hcox/coxeter.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <numbers>
#include <set>
#include <sstream>

namespace hcox {

EdgeWeight::EdgeWeight(int m) : m_(m) {
  if (m < 2) throw InputError("edge weight must be >= 2, got " + std::to_string(m));
}

EdgeWeight EdgeWeight::infinity() {
  EdgeWeight w;
  w.m_ = 0;
  return w;
}

int EdgeWeight::value() const {
  if (is_infinite()) throw InputError("infinite edge weight has no integer value");
  return m_;
}

double EdgeWeight::cos_pi_over() const {
  switch (m_) {
    case 0: return 1.0;
    case 2: return 0.0;
    case 3: return 0.5;
    case 4: return std::numbers::sqrt2 / 2.0;
    case 6: return std::numbers::sqrt3 / 2.0;
    default: return std::cos(std::numbers::pi / m_);
  }
}

double EdgeWeight::cos_squared() const {
  switch (m_) {
    case 0: return 1.0;
    case 2: return 0.0;
    case 3: return 0.25;
    case 4: return 0.5;
    case 6: return 0.75;
    default: {
      const double c = cos_pi_over();
      return c * c;
    }
  }
}

std::string EdgeWeight::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(m_);
}

CoxeterGraph::CoxeterGraph(int n) : n_(n), w_(static_cast<std::size_t>((n + 1) * (n + 1))) {
  if (n < 1) throw InputError("dimension must be >= 1");
}

CoxeterGraph CoxeterGraph::triangle(int p, int q, int r) {
  CoxeterGraph g(2);
  g.set_weight(0, 1, EdgeWeight(p));
  g.set_weight(1, 2, EdgeWeight(q));
  g.set_weight(2, 0, EdgeWeight(r));
  return g;
}

CoxeterGraph CoxeterGraph::cycle(const std::vector<int>& weights) {
  const int nodes = static_cast<int>(weights.size());
  if (nodes < 3) throw InputError("a cycle needs at least 3 nodes");
  CoxeterGraph g(nodes - 1);
  for (int k = 0; k < nodes; ++k) g.set_weight(k, (k + 1) % nodes, EdgeWeight(weights[k]));
  return g;
}

int CoxeterGraph::index(int i, int j) const {
  if (i < 0 || j < 0 || i > n_ || j > n_) throw InputError("node index out of range");
  return i * (n_ + 1) + j;
}

EdgeWeight CoxeterGraph::weight(int i, int j) const {
  if (i == j) throw InputError("weight requested on the diagonal");
  return w_[index(i, j)];
}

void CoxeterGraph::set_weight(int i, int j, EdgeWeight m) {
  if (i == j) throw InputError("weight set on the diagonal");
  w_[index(i, j)] = m;
  w_[index(j, i)] = m;
}

bool CoxeterGraph::has_infinite_weight() const {
  return std::any_of(w_.begin(), w_.end(), [](EdgeWeight w) { return w.is_infinite(); });
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InputError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

}  // namespace

CoxeterGraph CoxeterGraph::parse(std::string_view spec) {
  std::vector<std::pair<std::string_view, std::string_view>> items;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t end = spec.find(';', pos);
    if (end == std::string_view::npos) end = spec.size();
    std::string_view item = trim(spec.substr(pos, end - pos));
    if (!item.empty()) {
      const std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) throw InputError("graph spec item without '=': " + std::string(item));
      items.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
    }
    pos = end + 1;
  }
  if (items.empty() || items.front().first != "n") throw InputError("graph spec must start with n=<dim>");
  const int n = parse_int(items.front().second, "dimension");
  if (n < 1 || n > 8) throw InputError("dimension out of range in graph spec");
  CoxeterGraph g(n);
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 1; k < items.size(); ++k) {
    auto [key, value] = items[k];
    if (key.size() < 3 || key.front() != 'm')
      throw InputError("graph spec key must look like mIJ: " + std::string(key));
    int i = -1, j = -1;
    std::string_view idx = key.substr(1);
    const std::size_t comma = idx.find(',');
    if (comma != std::string_view::npos) {
      i = parse_int(idx.substr(0, comma), "node index");
      j = parse_int(idx.substr(comma + 1), "node index");
    } else if (idx.size() == 2) {
      i = idx[0] - '0';
      j = idx[1] - '0';
    } else {
      throw InputError("ambiguous node indices in '" + std::string(key) + "', use m<i>,<j>");
    }
    if (i < 0 || j < 0 || i > n || j > n || i == j)
      throw InputError("invalid node pair in '" + std::string(key) + "'");
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second)
      throw InputError("pair given twice in graph spec: " + std::string(key));
    EdgeWeight w = (value == "inf" || value == "oo" || value == "Infinity")
                       ? EdgeWeight::infinity()
                       : EdgeWeight(parse_int(value, "edge weight"));
    g.set_weight(i, j, w);
  }
  return g;
}

std::string CoxeterGraph::to_spec() const {
  std::ostringstream os;
  os << "n=" << n_;
  for (int i = 0; i <= n_; ++i)
    for (int j = i + 1; j <= n_; ++j) {
      const EdgeWeight w = weight(i, j);
      if (w == EdgeWeight()) continue;
      os << ";m";
      if (n_ < 10) os << i << j;
      else os << i << ',' << j;
      os << '=' << w.to_string();
    }
  return os.str();
}

CoxeterGraph CoxeterGraph::relabeled(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != size()) throw InputError("permutation has wrong length");
  CoxeterGraph g(n_);
  for (int i = 0; i <= n_; ++i)
    for (int j = i + 1; j <= n_; ++j) g.set_weight(perm[i], perm[j], weight(i, j));
  return g;
}

CartanMatrix::CartanMatrix(const CoxeterGraph& j) : c_(Mat::Identity(j.size(), j.size())) {
  for (int a = 0; a < j.size(); ++a)
    for (int b = 0; b < j.size(); ++b)
      if (a != b) c_(a, b) = -j.weight(a, b).cos_pi_over();
}

CartanMatrix cartan_matrix(const CoxeterGraph& j) { return CartanMatrix(j); }

std::string_view to_string(GraphTag tag) {
  switch (tag) {
    case GraphTag::Finite: return "Finite";
    case GraphTag::Euclidean: return "Euclidean";
    case GraphTag::Lanner: return "Lanner";
    case GraphTag::Other: return "Other";
  }
  return "Other";
}

namespace {

Mat drop_index(const Mat& m, int k) {
  const int s = static_cast<int>(m.rows());
  Mat out(s - 1, s - 1);
  for (int a = 0, ra = 0; a < s; ++a) {
    if (a == k) continue;
    for (int b = 0, rb = 0; b < s; ++b) {
      if (b == k) continue;
      out(ra, rb++) = m(a, b);
    }
    ++ra;
  }
  return out;
}

bool positive_definite(const Mat& m, double zero_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > zero_tol;
}

}  // namespace

GraphClass classify(const CoxeterGraph& j) {
  const Mat c = cartan_matrix(j).entries();
  Eigen::SelfAdjointEigenSolver<Mat> es(c, Eigen::EigenvaluesOnly);
  const Vec& ev = es.eigenvalues();
  const double tol = 1e-9 * ev.cwiseAbs().maxCoeff();

  GraphClass out;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev(k)) < tol) ++out.signature.zero;
    else if (ev(k) > 0) ++out.signature.positive;
    else ++out.signature.negative;
  }
  const int size = j.size();
  if (out.signature.positive == size) {
    out.tag = GraphTag::Finite;
    return out;
  }
  bool proper_pd = true;
  for (int k = 0; k < size && proper_pd; ++k) proper_pd = positive_definite(drop_index(c, k), tol);

  if (proper_pd && out.signature.zero == 1 && out.signature.positive == size - 1)
    out.tag = GraphTag::Euclidean;
  else if (proper_pd && out.signature.negative == 1 && out.signature.positive == size - 1 &&
           !j.has_infinite_weight())
    out.tag = GraphTag::Lanner;
  else
    out.tag = GraphTag::Other;
  return out;
}

namespace {

std::vector<int> upper_weights(const CoxeterGraph& j) {
  std::vector<int> out;
  for (int a = 0; a < j.size(); ++a)
    for (int b = a + 1; b < j.size(); ++b) {
      const EdgeWeight w = j.weight(a, b);
      out.push_back(w.is_infinite() ? 1 << 20 : w.value());
    }
  return out;
}

}  // namespace

CoxeterGraph canonical_form(const CoxeterGraph& j) {
  std::vector<int> perm(static_cast<std::size_t>(j.size()));
  std::iota(perm.begin(), perm.end(), 0);
  CoxeterGraph best = j;
  std::vector<int> best_key = upper_weights(j);
  do {
    CoxeterGraph cand = j.relabeled(perm);
    std::vector<int> key = upper_weights(cand);
    if (key < best_key) {
      best_key = std::move(key);
      best = std::move(cand);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace {

bool spherical_triangle(int p, int q, int r) {
  // 1/p + 1/q + 1/r > 1
  return q * r + p * r + p * q > p * q * r;
}

std::vector<CoxeterGraph> search_catalog(int n) {
  const int nodes = n + 1;
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < nodes; ++a)
    for (int b = a + 1; b < nodes; ++b) pairs.emplace_back(a, b);
  auto pair_index = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (pairs[k] == std::make_pair(a, b)) return static_cast<int>(k);
    return -1;
  };
  // Triangles checked as soon as their last pair is assigned.
  std::vector<std::vector<std::array<int, 3>>> closing(pairs.size());
  for (int a = 0; a < nodes; ++a)
    for (int b = a + 1; b < nodes; ++b)
      for (int c = b + 1; c < nodes; ++c) {
        std::array<int, 3> tri{pair_index(a, b), pair_index(b, c), pair_index(a, c)};
        const int last = *std::max_element(tri.begin(), tri.end());
        closing[last].push_back(tri);
      }

  std::set<std::vector<int>> seen;
  std::vector<CoxeterGraph> out;
  std::vector<int> w(pairs.size(), 2);
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == pairs.size()) {
      CoxeterGraph g(n);
      for (std::size_t e = 0; e < pairs.size(); ++e)
        g.set_weight(pairs[e].first, pairs[e].second, EdgeWeight(w[e]));
      if (classify(g).tag != GraphTag::Lanner) return;
      CoxeterGraph canon = canonical_form(g);
      if (seen.insert(upper_weights(canon)).second) out.push_back(std::move(canon));
      return;
    }
    for (int m = 2; m <= 5; ++m) {
      w[k] = m;
      bool ok = true;
      for (const auto& tri : closing[k])
        if (!spherical_triangle(w[tri[0]], w[tri[1]], w[tri[2]])) {
          ok = false;
          break;
        }
      if (ok) self(self, k + 1);
    }
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end(), [](const CoxeterGraph& a, const CoxeterGraph& b) {
    return upper_weights(a) < upper_weights(b);
  });
  return out;
}

}  // namespace

std::vector<CoxeterGraph> lanner_catalog(int n, int triangle_cap) {
  if (n < 2 || n > 5) throw InputError("lanner_catalog: dimension must lie in [2,5]");
  if (n == 5) return {};
  if (n == 2) {
    if (triangle_cap < 2) throw InputError("lanner_catalog: weight cap must be >= 2");
    std::vector<CoxeterGraph> out;
    for (int p = 2; p <= triangle_cap; ++p)
      for (int q = p; q <= triangle_cap; ++q)
        for (int r = q; r <= triangle_cap; ++r)
          if (q * r + p * r + p * q < p * q * r) out.push_back(canonical_form(CoxeterGraph::triangle(p, q, r)));
    return out;
  }
  return search_catalog(n);
}

LoopInfo find_loop(const CoxeterGraph& j) {
  const int size = j.size();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(size));
  std::vector<int> parent(static_cast<std::size_t>(size));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  LoopInfo info;
  int edges = 0;
  for (int a = 0; a < size; ++a)
    for (int b = a + 1; b < size; ++b) {
      const EdgeWeight w = j.weight(a, b);
      if (!w.is_infinite() && w.value() < 3) continue;
      adj[a].push_back(b);
      adj[b].push_back(a);
      ++edges;
      const int ra = root(a), rb = root(b);
      if (ra == rb) info.has_loop = true;
      else parent[ra] = rb;
    }
  if (!info.has_loop || edges != size) return info;
  for (const auto& nb : adj)
    if (nb.size() != 2) return info;
  std::vector<int> circuit{0};
  int prev = 0;
  int cur = std::min(adj[0][0], adj[0][1]);
  while (cur != 0) {
    circuit.push_back(cur);
    const int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
  }
  if (static_cast<int>(circuit.size()) == size) info.circuit = std::move(circuit);
  return info;
}

}  // namespace hcox
