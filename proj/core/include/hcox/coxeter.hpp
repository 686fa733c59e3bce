#pragma once

#include "hcox/types.hpp"

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hcox {

// Edge label m_ij of a Coxeter graph: an integer >= 2 or infinity.
class EdgeWeight {
 public:
  constexpr EdgeWeight() = default;
  explicit EdgeWeight(int m);
  static EdgeWeight infinity();

  bool is_infinite() const { return m_ == 0; }
  int value() const;
  double cos_pi_over() const;  // cos(pi/m), 1 for infinity
  double cos_squared() const;
  std::string to_string() const;

  friend bool operator==(EdgeWeight, EdgeWeight) = default;

 private:
  int m_ = 2;  // 0 encodes infinity
};

class CoxeterGraph {
 public:
  // n+1 nodes, every weight 2.
  explicit CoxeterGraph(int n);

  // Triangle with m01 = p, m12 = q, m20 = r.
  static CoxeterGraph triangle(int p, int q, int r);
  // Cycle 0-1-...-n-0 with weights[k] = m_{k,k+1}; other pairs get 2.
  static CoxeterGraph cycle(const std::vector<int>& weights);
  // Compact form "n=2;m01=4;m12=4;m02=4". Missing pairs default to 2, "inf" is infinity.
  static CoxeterGraph parse(std::string_view spec);

  int n() const { return n_; }
  int size() const { return n_ + 1; }
  EdgeWeight weight(int i, int j) const;
  void set_weight(int i, int j, EdgeWeight m);
  bool has_infinite_weight() const;

  std::string to_spec() const;
  // Node i of *this becomes node perm[i] of the result.
  CoxeterGraph relabeled(std::span<const int> perm) const;

  friend bool operator==(const CoxeterGraph&, const CoxeterGraph&) = default;

 private:
  int index(int i, int j) const;

  int n_;
  std::vector<EdgeWeight> w_;
};

class CartanMatrix {
 public:
  explicit CartanMatrix(const CoxeterGraph& j);
  const Mat& entries() const { return c_; }
  double operator()(int i, int j) const { return c_(i, j); }
  int size() const { return static_cast<int>(c_.rows()); }

 private:
  Mat c_;
};

CartanMatrix cartan_matrix(const CoxeterGraph& j);

enum class GraphTag { Finite, Euclidean, Lanner, Other };
std::string_view to_string(GraphTag tag);

struct Signature {
  int positive = 0;
  int zero = 0;
  int negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

struct GraphClass {
  GraphTag tag = GraphTag::Other;
  Signature signature;
};

GraphClass classify(const CoxeterGraph& j);

// Lanner graphs up to relabeling. n=2 enumerates p<=q<=r<=triangle_cap;
// n=3,4 search weights {2,...,5}; n=5 is empty.
std::vector<CoxeterGraph> lanner_catalog(int n, int triangle_cap = 7);

// Lexicographically smallest relabeling (by the upper-triangular weight list).
CoxeterGraph canonical_form(const CoxeterGraph& j);

struct LoopInfo {
  bool has_loop = false;
  // Set when the whole graph is a single circuit: starts at 0, then the smaller neighbour.
  std::optional<std::vector<int>> circuit;
};

LoopInfo find_loop(const CoxeterGraph& j);
inline bool has_loop(const CoxeterGraph& j) { return find_loop(j).has_loop; }

}  // namespace hcox
