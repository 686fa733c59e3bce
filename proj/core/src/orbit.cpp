#include "hcox/orbit.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <unordered_map>

namespace hcox {

namespace {

constexpr double kGrid = 1e9;
constexpr double kBoundaryBand = 1e-3;  // fraction of a grid cell treated as ambiguous
constexpr double kVerifyTol = 1e-7;
constexpr int kMaxAmbiguous = 10;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  v ^= v >> 30;
  v *= 0xbf58476d1ce4e5b9ULL;
  v ^= v >> 27;
  v *= 0x94d049bb133111ebULL;
  v ^= v >> 31;
  return h ^ v;
}

std::uint64_t hash_quantized(const std::vector<std::int64_t>& q, int sign) {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  for (std::int64_t v : q) h = mix(h, static_cast<std::uint64_t>(sign * v));
  return h;
}

// Row-major pivot: first entry of largest magnitude.
double pivot_value(const double* m, int rank) {
  double best = -1.0, val = 0.0;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      const double v = m[j * rank + i];
      if (std::abs(v) > best) {
        best = std::abs(v);
        val = v;
      }
    }
  return val;
}

using detail::parallel_for;
using detail::resolve_threads;

}  // namespace

struct OrbitBall::Probe {
  std::vector<double> normalized;
  std::vector<std::int64_t> q;
  std::vector<int> ambiguous;
  std::uint64_t hash = 0;
};

OrbitBall::Probe OrbitBall::make_probe(const double* m) const {
  const int d2 = rank_ * rank_;
  Probe p;
  p.normalized.resize(static_cast<std::size_t>(d2));
  p.q.resize(static_cast<std::size_t>(d2));
  const double piv = pivot_value(m, rank_);
  for (int k = 0; k < d2; ++k) {
    const double v = m[k] / piv;
    p.normalized[k] = v;
    const double scaled = v * kGrid;
    p.q[k] = std::llround(scaled);
    const double frac = scaled - std::floor(scaled);
    if (std::abs(frac - 0.5) < kBoundaryBand) p.ambiguous.push_back(k);
  }
  p.hash = hash_quantized(p.q, 1);
  return p;
}

std::optional<std::size_t> OrbitBall::lookup(const Probe& probe) const {
  if (slots_.empty()) return std::nullopt;
  const int d2 = rank_ * rank_;
  const std::size_t mask = slots_.size() - 1;
  const int amb = static_cast<int>(probe.ambiguous.size());
  if (amb > kMaxAmbiguous) throw ConditioningError("orbit key has too many entries on quantization boundaries");

  auto matches = [&](std::size_t e) {
    const double* m = &mats_[e * static_cast<std::size_t>(d2)];
    const double piv = pivot_value(m, rank_);
    double plus = 0.0, minus = 0.0;
    for (int k = 0; k < d2; ++k) {
      const double v = m[k] / piv;
      plus = std::max(plus, std::abs(v - probe.normalized[k]));
      minus = std::max(minus, std::abs(v + probe.normalized[k]));
    }
    return std::min(plus, minus) < kVerifyTol;
  };

  std::vector<std::int64_t> q = probe.q;
  for (int sign : {1, -1}) {
    for (unsigned bits = 0; bits < (1u << amb); ++bits) {
      for (int a = 0; a < amb; ++a) {
        const int k = probe.ambiguous[a];
        const double scaled = probe.normalized[k] * kGrid;
        const std::int64_t other = scaled > static_cast<double>(probe.q[k]) ? probe.q[k] + 1 : probe.q[k] - 1;
        q[k] = (bits >> a) & 1u ? other : probe.q[k];
      }
      const std::uint64_t h = (sign == 1 && bits == 0) ? probe.hash : hash_quantized(q, sign);
      for (std::size_t s = h & mask;; s = (s + 1) & mask) {
        const std::uint32_t slot = slots_[s];
        if (slot == 0) break;
        const std::size_t e = slot - 1;
        if (keys_[e] == h && matches(e)) return e;
      }
    }
  }
  return std::nullopt;
}

void OrbitBall::grow_table() {
  std::size_t cap = slots_.empty() ? 1024 : slots_.size() * 2;
  slots_.assign(cap, 0);
  for (std::size_t e = 0; e < keys_.size(); ++e) insert_index(e);
}

void OrbitBall::insert_index(std::size_t i) {
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t s = keys_[i] & mask;; s = (s + 1) & mask)
    if (slots_[s] == 0) {
      slots_[s] = static_cast<std::uint32_t>(i + 1);
      return;
    }
}

std::vector<int> OrbitBall::word(std::size_t i) const {
  std::vector<int> w;
  w.reserve(length_[i]);
  for (std::int64_t e = static_cast<std::int64_t>(i); parent_[e] >= 0; e = parent_[e]) w.push_back(letter_[e]);
  return w;
}

Eigen::Map<const Mat> OrbitBall::matrix(std::size_t i) const {
  const std::size_t d2 = static_cast<std::size_t>(rank_) * rank_;
  return Eigen::Map<const Mat>(&mats_[i * d2], rank_, rank_);
}

GroupElement OrbitBall::element(std::size_t i) const { return GroupElement{word(i), Mat(matrix(i)), keys_[i]}; }

std::optional<std::size_t> OrbitBall::find(const Mat& m) const {
  if (m.rows() != rank_ || m.cols() != rank_) throw InputError("OrbitBall::find: shape mismatch");
  const Mat copy = m;
  return lookup(make_probe(copy.data()));
}

std::int64_t OrbitBall::right_neighbor(std::size_t i, int k) const {
  if (right_.empty()) throw Error("OrbitBall: right multiplication table was not built");
  return right_[i * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(k)];
}

OrbitBall enumerate(const ReflectionSet& r, int depth, const EnumerateOptions& options) {
  if (depth < 0) throw InputError("enumerate: depth must be >= 0");
  if (depth > 4000) throw InputError("enumerate: depth too large");
  OrbitBall ball(r);
  ball.depth_ = depth;
  ball.rank_ = r.size();
  const int rank = ball.rank_;
  const std::size_t d2 = static_cast<std::size_t>(rank) * rank;
  const unsigned threads = resolve_threads(options.threads);

  auto push = [&](std::int32_t parent, int letter, int length, const double* m, std::uint64_t key) {
    if (ball.parent_.size() >= options.max_elements)
      throw GuardError("enumerate: element cap of " + std::to_string(options.max_elements) + " exceeded");
    ball.parent_.push_back(parent);
    ball.letter_.push_back(static_cast<std::int8_t>(letter));
    ball.length_.push_back(static_cast<std::uint16_t>(length));
    ball.mats_.insert(ball.mats_.end(), m, m + d2);
    ball.keys_.push_back(key);
    if (ball.keys_.size() * 2 > ball.slots_.size()) ball.grow_table();
    else ball.insert_index(ball.keys_.size() - 1);
  };

  const Mat id = Mat::Identity(rank, rank);
  push(-1, -1, 0, id.data(), ball.make_probe(id.data()).hash);
  ball.sphere_sizes_.push_back(1);
  ball.sphere_begin_ = {0, 1};

  for (int k = 1; k <= depth; ++k) {
    const std::size_t lo = ball.sphere_begin_[k - 1], hi = ball.sphere_begin_[k];
    struct Candidate {
      std::int32_t parent;
      int letter;
    };
    std::vector<Candidate> cands;
    cands.reserve((hi - lo) * static_cast<std::size_t>(rank));
    for (std::size_t e = lo; e < hi; ++e)
      for (int i = 0; i < rank; ++i)
        if (i != ball.letter_[e]) cands.push_back({static_cast<std::int32_t>(e), i});

    std::vector<double> cm(cands.size() * d2);
    std::vector<OrbitBall::Probe> probes(cands.size());
    double worst = 0.0;
    std::vector<double> worst_per(threads, 0.0);
    parallel_for(cands.size(), threads, [&](unsigned chunk, std::size_t a, std::size_t b) {
      double local = 0.0;
      for (std::size_t c = a; c < b; ++c) {
        Eigen::Map<Mat> m(&cm[c * d2], rank, rank);
        m = Eigen::Map<const Mat>(&ball.mats_[static_cast<std::size_t>(cands[c].parent) * d2], rank, rank);
        r.apply_left(cands[c].letter, m);
        const double mx = m.cwiseAbs().maxCoeff();
        local = std::isfinite(mx) ? std::max(local, mx) : std::numeric_limits<double>::infinity();
        probes[c] = ball.make_probe(&cm[c * d2]);
      }
      worst_per[chunk] = local;
    });
    for (double w : worst_per) worst = std::max(worst, w);
    if (!(worst <= options.conditioning_limit))
      throw ConditioningError("enumerate: matrix entries reached " + std::to_string(worst) + " at word length " +
                              std::to_string(k) + " (limit " + std::to_string(options.conditioning_limit) +
                              "); enumerate at a better conditioned parameter");

    std::size_t added = 0;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (ball.lookup(probes[c])) continue;
      push(cands[c].parent, cands[c].letter, k, &cm[c * d2], probes[c].hash);
      ++added;
    }
    ball.sphere_sizes_.push_back(added);
    ball.sphere_begin_.push_back(ball.parent_.size());
  }

  if (options.right_table) {
    ball.right_.assign(ball.size() * static_cast<std::size_t>(rank), -1);
    parallel_for(ball.size(), threads, [&](unsigned, std::size_t a, std::size_t b) {
      Mat m(rank, rank);
      for (std::size_t e = a; e < b; ++e)
        for (int j = 0; j < rank; ++j) {
          m = ball.matrix(e);
          r.apply_right(m, j);
          auto hit = ball.lookup(ball.make_probe(m.data()));
          if (hit) ball.right_[e * rank + j] = static_cast<std::int32_t>(*hit);
        }
    });
  }
  return ball;
}

Mat linear_image(std::span<const int> word, const ReflectionSet& r_t) {
  Mat m = Mat::Identity(r_t.size(), r_t.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it >= r_t.size()) throw InputError("word letter out of range");
    r_t.apply_left(*it, m);
  }
  return m;
}

Mat transport(const GroupElement& g, const ReflectionSet& r_t) {
  Mat m = linear_image(g.word, r_t);
  const double mx = m.cwiseAbs().maxCoeff();
  if (!std::isfinite(mx)) throw ConditioningError("transport: overflow");
  return projective_normalize(m);
}

TransportedBall::TransportedBall(const OrbitBall& ball, const ReflectionSet& r_t, double limit)
    : ball_(&ball), r_(r_t) {
  if (r_t.size() != ball.rank()) throw InputError("TransportedBall: rank mismatch");
  const int rank = ball.rank();
  const std::size_t d2 = static_cast<std::size_t>(rank) * rank;
  fwd_.resize(ball.size() * d2);
  inv_.resize(ball.size() * d2);
  const Mat id = Mat::Identity(rank, rank);
  std::copy(id.data(), id.data() + d2, fwd_.begin());
  std::copy(id.data(), id.data() + d2, inv_.begin());
  for (std::size_t e = 1; e < ball.size(); ++e) {
    const std::size_t p = static_cast<std::size_t>(ball.parent(e));
    const int s = ball.first_letter(e);
    Eigen::Map<Mat> f(&fwd_[e * d2], rank, rank);
    Eigen::Map<Mat> g(&inv_[e * d2], rank, rank);
    f = Eigen::Map<const Mat>(&fwd_[p * d2], rank, rank);
    g = Eigen::Map<const Mat>(&inv_[p * d2], rank, rank);
    r_t.apply_left(s, f);
    r_t.apply_right(g, s);
    const double mx = std::max(f.cwiseAbs().maxCoeff(), g.cwiseAbs().maxCoeff());
    if (!(mx <= limit))
      throw ConditioningError("transport: entries reached " + std::to_string(mx) + " at word length " +
                              std::to_string(ball.length(e)));
  }
}

Eigen::Map<const Mat> TransportedBall::forward(std::size_t i) const {
  const int rank = ball_->rank();
  return Eigen::Map<const Mat>(&fwd_[i * static_cast<std::size_t>(rank) * rank], rank, rank);
}

Eigen::Map<const Mat> TransportedBall::inverse(std::size_t i) const {
  const int rank = ball_->rank();
  return Eigen::Map<const Mat>(&inv_[i * static_cast<std::size_t>(rank) * rank], rank, rank);
}

TranslateSet simplex_translates(const TransportedBall& tb, const Chart& chart) {
  TranslateSet out;
  out.slot.assign(tb.size(), -1);
  const int rank = tb.rank();
  for (std::size_t e = 0; e < tb.size(); ++e) {
    const auto f = tb.forward(e);
    TranslatedSimplex s;
    s.element = e;
    bool ok = true;
    for (int k = 0; k < rank && ok; ++k) {
      const Vec h = f.col(k);
      if (chart.degenerate(h)) ok = false;
      else s.vertices.push_back(chart.to_chart(h));
    }
    if (!ok) {
      ++out.degenerate;
      continue;
    }
    out.slot[e] = static_cast<std::int64_t>(out.simplices.size());
    out.simplices.push_back(std::move(s));
  }
  return out;
}

VertexSet vertex_orbits(const TransportedBall& tb, const Chart& chart) {
  const OrbitBall& ball = tb.ball();
  if (!ball.has_right_table()) throw InputError("vertex_orbits: ball has no right multiplication table");
  const int rank = ball.rank();
  VertexSet vs;
  vs.rank = rank;
  vs.vertex_of.assign(ball.size() * static_cast<std::size_t>(rank), -1);
  std::unordered_map<std::uint64_t, std::int64_t> ids;
  ids.reserve(ball.size() * 2);

  for (std::size_t e = 0; e < ball.size(); ++e)
    for (int k = 0; k < rank; ++k) {
      std::size_t cur = e;
      for (bool moved = true; moved;) {
        moved = false;
        for (int j = 0; j < rank; ++j) {
          if (j == k) continue;
          const std::int64_t nb = ball.right_neighbor(cur, j);
          if (nb >= 0 && ball.length(static_cast<std::size_t>(nb)) < ball.length(cur)) {
            cur = static_cast<std::size_t>(nb);
            moved = true;
            break;
          }
        }
      }
      const std::uint64_t key = static_cast<std::uint64_t>(cur) * rank + k;
      auto [it, fresh] = ids.try_emplace(key, static_cast<std::int64_t>(vs.vertices.size()));
      if (fresh) {
        OrbitVertex v;
        v.label = k;
        v.representative = cur;
        v.homogeneous = tb.forward(cur).col(k);
        v.degenerate = chart.degenerate(v.homogeneous);
        if (v.degenerate) ++vs.degenerate;
        else v.point = chart.to_chart(v.homogeneous);
        vs.vertices.push_back(std::move(v));
      }
      vs.vertex_of[e * rank + k] = it->second;
      vs.vertices[static_cast<std::size_t>(it->second)].incident.push_back(e);
    }

  for (auto& v : vs.vertices) {
    bool complete = true;
    for (std::size_t g : v.incident)
      for (int j = 0; j < rank && complete; ++j)
        if (j != v.label && ball.right_neighbor(g, j) < 0) complete = false;
    v.complete_link = complete;
  }
  return vs;
}

}  // namespace hcox
