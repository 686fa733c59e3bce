#pragma once

#include "hcox/chart.hpp"
#include "hcox/rep.hpp"
#include "hcox/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hcox {

struct GroupElement {
  std::vector<int> word;  // element = s_word[0] s_word[1] ... s_word[k-1]
  Mat matrix;             // linear image at the reference parameter
  std::uint64_t key = 0;
};

struct EnumerateOptions {
  std::size_t max_elements = 5'000'000;
  double conditioning_limit = 1e12;
  unsigned threads = 0;  // 0 picks std::thread::hardware_concurrency
  bool right_table = true;
};

// Elements of W_J up to a word length, deduplicated by quantized projective keys.
// Stored as a BFS tree: element i = s_letter(i) * element parent(i).
class OrbitBall {
 public:
  int depth() const { return depth_; }
  int rank() const { return rank_; }
  std::size_t size() const { return parent_.size(); }
  const std::vector<std::size_t>& sphere_sizes() const { return sphere_sizes_; }
  // Elements are ordered by length; sphere k occupies [sphere_begin(k), sphere_begin(k+1)).
  std::size_t sphere_begin(int k) const { return sphere_begin_[static_cast<std::size_t>(k)]; }

  int length(std::size_t i) const { return length_[i]; }
  int first_letter(std::size_t i) const { return letter_[i]; }
  std::int64_t parent(std::size_t i) const { return parent_[i]; }
  std::vector<int> word(std::size_t i) const;
  Eigen::Map<const Mat> matrix(std::size_t i) const;
  std::uint64_t key(std::size_t i) const { return keys_[i]; }
  GroupElement element(std::size_t i) const;

  const ReflectionSet& reference() const { return reference_; }

  // Index of the element whose reference matrix is projectively equal to m.
  std::optional<std::size_t> find(const Mat& m) const;
  // Index of element(i) * s_k, or -1 when that product lies outside the ball.
  std::int64_t right_neighbor(std::size_t i, int k) const;
  bool has_right_table() const { return !right_.empty(); }

  friend OrbitBall enumerate(const ReflectionSet& r, int depth, const EnumerateOptions& options);

 private:
  explicit OrbitBall(const ReflectionSet& r) : reference_(r) {}

  struct Probe;
  Probe make_probe(const double* m) const;
  std::optional<std::size_t> lookup(const Probe& probe) const;
  void insert_index(std::size_t i);
  void grow_table();

  ReflectionSet reference_;
  int depth_ = 0;
  int rank_ = 0;
  std::vector<std::int32_t> parent_;
  std::vector<std::int8_t> letter_;
  std::vector<std::uint16_t> length_;
  std::vector<double> mats_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> slots_;  // open addressing, element index + 1
  std::vector<std::int32_t> right_;
  std::vector<std::size_t> sphere_sizes_;
  std::vector<std::size_t> sphere_begin_;
};

OrbitBall enumerate(const ReflectionSet& r, int depth, const EnumerateOptions& options = {});

// Raw product s_w0 s_w1 ... along the word.
Mat linear_image(std::span<const int> word, const ReflectionSet& r_t);
// Projectively normalized product along g.word.
Mat transport(const GroupElement& g, const ReflectionSet& r_t);

// Linear images of every ball element and of its inverse at one parameter.
// Holds a reference to the ball, which must outlive it.
class TransportedBall {
 public:
  TransportedBall(const OrbitBall& ball, const ReflectionSet& r_t, double limit = 1e150);

  const OrbitBall& ball() const { return *ball_; }
  const ReflectionSet& reflections() const { return r_; }
  std::size_t size() const { return ball_->size(); }
  int rank() const { return ball_->rank(); }
  Eigen::Map<const Mat> forward(std::size_t i) const;
  Eigen::Map<const Mat> inverse(std::size_t i) const;

 private:
  const OrbitBall* ball_;
  ReflectionSet r_;
  std::vector<double> fwd_;
  std::vector<double> inv_;
};

struct TranslatedSimplex {
  std::size_t element = 0;
  std::vector<Vec> vertices;  // chart coordinates, vertex k is the image of p_k
};

struct TranslateSet {
  std::vector<TranslatedSimplex> simplices;
  std::vector<std::int64_t> slot;  // element -> index into simplices, -1 when skipped
  std::size_t degenerate = 0;
};

TranslateSet simplex_translates(const TransportedBall& tb, const Chart& chart);

struct OrbitVertex {
  int label = 0;                  // the vertex p_label of P it is an image of
  std::size_t representative = 0; // minimal coset representative g, vertex = g p_label
  Vec homogeneous;
  Vec point;                      // chart coordinates, empty when degenerate
  bool degenerate = false;
  std::vector<std::size_t> incident;  // elements whose simplex has this vertex
  bool complete_link = false;         // every simplex around the vertex is in the ball
};

struct VertexSet {
  std::vector<OrbitVertex> vertices;
  std::vector<std::int64_t> vertex_of;  // element * rank + k -> vertex id
  int rank = 0;
  std::size_t degenerate = 0;

  std::int64_t id(std::size_t element, int k) const {
    return vertex_of[element * static_cast<std::size_t>(rank) + static_cast<std::size_t>(k)];
  }
};

// Vertex g p_k is identified through the minimal representative of g W_k, where W_k is
// generated by the s_j with j != k; requires the ball's right table.
VertexSet vertex_orbits(const TransportedBall& tb, const Chart& chart);

}  // namespace hcox
