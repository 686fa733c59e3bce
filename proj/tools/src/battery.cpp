#include "hcox_cli/battery.hpp"

#include "pipeline.hpp"

#include "hcox/hilbert.hpp"
#include "hcox/render.hpp"
#include "hcox/verify.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>

namespace hcox::cli {

bool SuiteResult::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string g6(double v) { return fmt("%.6g", v); }

const CoxeterGraph& k444() {
  static const CoxeterGraph g = CoxeterGraph::triangle(4, 4, 4);
  return g;
}

void add(SuiteResult& r, std::string name, bool pass, std::string detail) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

int max_corner_weight(const CoxeterGraph& g) {
  int m = 0;
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j) m = std::max(m, g.weight(i, j).value());
  return m;
}

}  // namespace

SuiteResult suite_propmain(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  SuiteResult r{"propmain", {}, 0.0};
  const Group g = Group::make(CoxeterGraph::parse(o.graph), o.depth);
  const std::vector<double> ts = o.t_list.empty() ? std::vector<double>{g.th, 4.0, 8.0, 16.0} : o.t_list;
  const int samples = o.samples > 0 ? o.samples : 1000;
  const double bound = 2.0 * max_corner_weight(g.graph);
  std::vector<double> maxima;
  std::mt19937_64 rng(o.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> pos(0.05, 0.95);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto st = Stage::make(g, ts[k], o.body_depth);
    const VertexRatioReport rep = verify_prop_main(st->body, g.graph, samples, o.seed + k);
    maxima.push_back(rep.max_ratio);
    add(r, "ratio t=" + g6(ts[k]), rep.ok,
        "max (d(x,E)+d(y,E))/d(x,y) = " + g6(rep.max_ratio) + " over " + std::to_string(rep.samples) +
            " samples, bound 2m_E + " + g6(rep.slack) + " = " + g6(bound + rep.slack) + ", worst at a=" + g6(rep.worst.a) +
            " b=" + g6(rep.worst.b) + " vertex " + std::to_string(rep.worst.vertex) + ", epsilon " + g6(rep.epsilon));

    bool chains_ok = true;
    double joint = 0.0, usage = 0.0;
    int chains = 0;
    for (int v = 0; v < 3; ++v)
      for (int s = 0; s < 4; ++s) {
        const ChainReport ch = chain_construction(st->body, st->r, g.graph, v, pos(rng), pos(rng));
        chains_ok = chains_ok && ch.ok;
        joint = std::max(joint, ch.joint_error);
        const double allowed = ch.p * (2.0 * ch.gap + 1e-10 * std::max(1.0, ch.dxy.upper));
        usage = std::max(usage, std::abs(ch.total.upper - ch.p * ch.dxy.upper) / allowed);
        ++chains;
      }
    add(r, "chain t=" + g6(ts[k]), chains_ok,
        std::to_string(chains) + " chains, endpoint error " + g6(joint) + " (tol 1e-9), worst total length deviation " +
            g6(usage) + " of the allowed p*(2gap + rounding)");
  }
  if (maxima.size() > 1) {
    const double earlier = *std::max_element(maxima.begin(), maxima.end() - 1);
    add(r, "uniform in t", maxima.back() <= earlier + 0.1,
        "max ratio at the largest t " + g6(maxima.back()) + " vs earlier maximum " + g6(earlier) + " + 0.1");
  }
  r.seconds = seconds_since(t0);
  return r;
}

SuiteResult suite_metriccomp(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  SuiteResult r{"metriccomp", {}, 0.0};
  const Group g = Group::make(CoxeterGraph::parse(o.graph), o.depth);
  const std::vector<double> ts = o.t_list.empty() ? std::vector<double>{g.th, 4.0, 8.0} : o.t_list;
  const int samples = o.samples > 0 ? o.samples : 500;
  std::vector<double> cs;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto st = Stage::make(g, ts[k], o.body_depth);
    const MetricGraph mg = build_skeleton(*st->tb, st->body);
    const MetricComparisonReport rep = verify_metric_comparison(*st->tb, st->body, mg, samples, o.seed + k);
    cs.push_back(rep.c_prime);
    add(r, "t=" + g6(ts[k]), rep.ok,
        "empirical C' = " + g6(rep.c_prime) + " over " + std::to_string(rep.pairs.size()) + " pairs, " +
            std::to_string(rep.violations) + " pairs with graph distance below ambient (worst excess " +
            g6(rep.worst_deficit) + ")");
  }
  const double hi = *std::max_element(cs.begin(), cs.end()), lo = *std::min_element(cs.begin(), cs.end());
  add(r, "C' stable in t", std::isfinite(hi) && hi <= 1.5 * std::max(lo, 1.0),
      "C' ranges over [" + g6(lo) + ", " + g6(hi) + "], allowed spread factor 1.5");
  r.seconds = seconds_since(t0);
  return r;
}

SuiteResult suite_lemmas(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  SuiteResult r{"lemmas", {}, 0.0};
  const Group g = Group::make(CoxeterGraph::parse(o.graph), o.depth);
  const std::vector<double> ts = o.t_list.empty() ? std::vector<double>{g.th} : o.t_list;
  const int samples = o.samples > 0 ? o.samples : 500;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto st = Stage::make(g, ts[k], o.body_depth);
    const std::string at = " t=" + g6(ts[k]);
    const int rank = st->chart.n() + 1;

    std::size_t pairs = 0, violations = 0;
    double worst = -std::numeric_limits<double>::infinity(), gap = 0.0;
    for (int i = 0; i < rank; ++i) {
      const int share = (samples + rank - 1) / rank;
      const ContractionReport c = verify_projection_contraction(*st->tb, st->body, i, share, o.seed + 31 * k + i);
      pairs += c.pairs;
      violations += c.violations;
      worst = std::max(worst, c.worst_excess);
      gap = std::max(gap, c.max_gap);
    }
    add(r, "projection contraction" + at, pairs >= static_cast<std::size_t>(samples) && violations == 0,
        std::to_string(pairs) + " pairs, max of upper(Pr x,Pr y) - lower(x,y) - 2gap = " + g6(worst) +
            ", max gap " + g6(gap));

    bool iter_ok = true;
    double ratio = 0.0;
    std::size_t runs = 0, mono = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j) {
        const IteratedProjectionReport ip =
            verify_iterated_projection(*st->tb, st->body, {i, j}, 20, o.seed + 97 * k + 7 * i + j);
        iter_ok = iter_ok && ip.ok;
        ratio = std::max(ratio, ip.max_observed_ratio);
        runs += ip.runs;
        mono += ip.monotonicity_violations;
      }
    add(r, "iterated projection" + at, iter_ok,
        std::to_string(runs) + " runs, worst observed decay ratio " + g6(ratio) + ", distance increases " +
            std::to_string(mono));

    const TranslateSet tr = simplex_translates(*st->tb, st->chart);
    const StarConvexityReport sc = verify_star_convexity(st->vs, tr);
    add(r, "star convexity" + at, sc.ok,
        std::to_string(sc.convex) + "/" + std::to_string(sc.checked) + " complete-link stars convex (min turn " +
            g6(sc.min_turn) + "), corrupted star verdict " + (sc.control_convex ? "convex" : "not convex"));
  }
  r.seconds = seconds_since(t0);
  return r;
}

namespace {

// Principal-minor test for a Lanner Cartan matrix, independent of the eigen-solver path.
bool lanner_by_minors(const Mat& c) {
  const int s = static_cast<int>(c.rows());
  for (unsigned mask = 1; mask + 1 < (1u << s); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < s; ++i)
      if (mask >> i & 1u) idx.push_back(i);
    Mat sub(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) sub(a, b) = c(idx[a], idx[b]);
    if (!(sub.determinant() > 1e-12)) return false;
  }
  return c.determinant() < -1e-12;
}

std::vector<int> canonical_weights(const std::vector<std::vector<int>>& w) {
  const int s = static_cast<int>(w.size());
  std::vector<int> perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  do {
    std::vector<int> cur;
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j) cur.push_back(w[perm[i]][perm[j]]);
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::set<std::vector<int>> oracle_catalog(int n) {
  const int s = n + 1;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) pairs.emplace_back(i, j);
  std::set<std::vector<int>> out;
  std::vector<int> digits(pairs.size(), 2);
  while (true) {
    Mat c = Mat::Identity(s, s);
    std::vector<std::vector<int>> w(s, std::vector<int>(s, 2));
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      c(i, j) = c(j, i) = -std::cos(M_PI / digits[k]);
      w[i][j] = w[j][i] = digits[k];
    }
    if (lanner_by_minors(c)) out.insert(canonical_weights(w));
    std::size_t k = 0;
    while (k < digits.size() && digits[k] == 5) digits[k++] = 2;
    if (k == digits.size()) break;
    ++digits[k];
  }
  return out;
}

std::vector<int> weights_of(const CoxeterGraph& g) {
  std::vector<std::vector<int>> w(g.size(), std::vector<int>(g.size(), 2));
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j) w[i][j] = w[j][i] = g.weight(i, j).value();
  return canonical_weights(w);
}

SuiteResult criterion_classification() {
  SuiteResult r{"criterion1", {}, 0.0};
  const auto t0 = Clock::now();
  struct Case {
    int p, q, r;
    GraphTag tag;
  };
  const Case cases[] = {{2, 3, 3, GraphTag::Finite},
                        {3, 3, 3, GraphTag::Euclidean},
                        {4, 4, 4, GraphTag::Lanner},
                        {5, 5, 5, GraphTag::Lanner},
                        {3, 4, 5, GraphTag::Lanner}};
  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    const GraphTag got = classify(CoxeterGraph::triangle(c.p, c.q, c.r)).tag;
    ok = ok && got == c.tag;
    detail += "(" + std::to_string(c.p) + "," + std::to_string(c.q) + "," + std::to_string(c.r) + ")->" +
              std::string(to_string(got)) + " ";
  }
  add(r, "triangles", ok, detail);
  add(r, "n=5 catalog empty", lanner_catalog(5).empty(), std::to_string(lanner_catalog(5).size()) + " graphs");
  const auto c3 = lanner_catalog(3);
  const auto c4 = lanner_catalog(4);
  const double runtime = seconds_since(t0);
  for (const auto& [n, cat] : {std::pair{3, &c3}, std::pair{4, &c4}}) {
    std::set<std::vector<int>> mine;
    for (const CoxeterGraph& g : *cat) mine.insert(weights_of(g));
    const std::set<std::vector<int>> oracle = oracle_catalog(n);
    add(r, "n=" + std::to_string(n) + " catalog vs brute force", mine == oracle && mine.size() == cat->size(),
        std::to_string(cat->size()) + " graphs, oracle " + std::to_string(oracle.size()));
  }
  add(r, "runtime", runtime < 1.0, g6(runtime) + " s for the battery and catalogs (limit 1 s)");
  return r;
}

SuiteResult criterion_moduli() {
  SuiteResult r{"criterion2", {}, 0.0};
  const auto t0 = Clock::now();
  const CoxeterGraph& j = k444();
  double mu_err = 0.0, prod_err = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double t = std::exp(std::log(1.0 / 32) + k * (std::log(32.0) - std::log(1.0 / 32)) / 19);
    const ModuliCoordinate m = moduli_coordinate(family_matrix(j, t), j);
    mu_err = std::max(mu_err, std::abs(m.mu - t * t * t) / (t * t * t));
    prod_err = std::max(prod_err, std::abs(m.phi * m.phi_tilde - 0.125) / 0.125);
  }
  add(r, "mu = t^3", mu_err <= 1e-12, "max relative error " + g6(mu_err) + " over 20 t in [1/32, 32]");
  add(r, "phi*phi~ = 1/8", prod_err <= 1e-10, "max relative error " + g6(prod_err));

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> logt(std::log(1.0 / 32), std::log(32.0)), mag(-1.5, 1.5), u01(0.0, 1.0);
  auto conj = [&](const Mat& a) {
    Vec lam(a.rows());
    for (Eigen::Index i = 0; i < lam.size(); ++i) lam(i) = std::exp(mag(rng)) * (u01(rng) < 0.3 ? -1.0 : 1.0);
    return std::pair{Mat(lam.asDiagonal() * a * lam.cwiseInverse().asDiagonal()), lam};
  };
  int found = 0, rejected = 0;
  for (int k = 0; k < 100; ++k) {
    const GramLikeMatrix a = family_matrix(j, std::exp(logt(rng)));
    const auto [b, lam] = conj(a.entries());
    const auto c = diag_equivalent(a, GramLikeMatrix(b));
    if (c && (c->apply(a.entries()) - b).cwiseAbs().maxCoeff() <= 1e-10 * b.cwiseAbs().maxCoeff()) ++found;
  }
  for (int k = 0; k < 100; ++k) {
    const double t = std::exp(logt(rng));
    const double s = t * (1.0 + 0.01 + u01(rng)) * (u01(rng) < 0.5 ? 1.0 : 1.0 / (1.0 + 0.01 + u01(rng)) / (1.0 + 0.01 + u01(rng)));
    const auto [b, lam] = conj(family_matrix(j, s).entries());
    if (!diag_equivalent(family_matrix(j, t), GramLikeMatrix(b))) ++rejected;
  }
  add(r, "conjugations identified", found == 100, std::to_string(found) + "/100");
  add(r, "mismatched pairs rejected", rejected == 100, std::to_string(rejected) + "/100");
  const double runtime = seconds_since(t0);
  add(r, "runtime", runtime < 1.0, g6(runtime) + " s (limit 1 s)");
  return r;
}

SuiteResult criterion_representation() {
  SuiteResult r{"criterion3", {}, 0.0};
  const CoxeterGraph& j = k444();
  const double th = hyperbolic_parameter(j);
  bool ok = true;
  double worst = 0.0, faithful = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 20; ++k) {
    const double t = th * std::pow(2.0, -5.0 + k * 0.5);
    const RelationsReport rep = verify_relations(reflections_from(family_matrix(j, t), t), j, 1e-9);
    ok = ok && rep.ok;
    worst = std::max(worst, rep.max_residual);
    for (const RelationCheck& c : rep.pairs) faithful = std::min(faithful, c.min_lower_residual);
  }
  add(r, "relations over [th/32, 32th]", ok,
      "max residual of (s_i s_j)^4 " + g6(worst) + " (tol 1e-9), smallest lower-power residual " + g6(faithful));
  const double diff = (family_matrix(j, std::sqrt(2.0)).entries() - cartan_matrix(j).entries()).cwiseAbs().maxCoeff();
  add(r, "A_sqrt2 = Cartan", diff <= 1e-12, "max entry difference " + g6(diff));
  return r;
}

SuiteResult criterion_orbit() {
  SuiteResult r{"criterion4", {}, 0.0};
  const CoxeterGraph& j = k444();
  const double th = hyperbolic_parameter(j);
  const OrbitBall b2 = enumerate(reflections_from(family_matrix(j, th), th), 2);
  add(r, "sphere sizes 0..2", b2.sphere_sizes() == std::vector<std::size_t>{1, 3, 6}, "got " +
      std::to_string(b2.sphere_sizes()[0]) + "," + std::to_string(b2.sphere_sizes()[1]) + "," +
      std::to_string(b2.sphere_sizes()[2]));
  const OrbitBall h10 = enumerate(reflections_from(family_matrix(j, th), th), 10);
  const OrbitBall o10 = enumerate(reflections_from(family_matrix(j, 1.0), 1.0), 10);
  add(r, "t_h vs t=1 at depth 10", h10.sphere_sizes() == o10.sphere_sizes(),
      "ball sizes " + std::to_string(h10.size()) + " and " + std::to_string(o10.size()));
  const OrbitBall again = enumerate(reflections_from(family_matrix(j, th), th), 10);
  bool same = again.sphere_sizes() == h10.sphere_sizes() && again.size() == h10.size();
  for (std::size_t e = 0; same && e < again.size(); ++e) same = again.key(e) == h10.key(e);
  add(r, "deterministic", same, "identical sphere sizes and keys across two runs");
  const auto t0 = Clock::now();
  const OrbitBall b16 = enumerate(reflections_from(family_matrix(j, th), th), 16);
  const double secs = seconds_since(t0);
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  const double gb = static_cast<double>(ru.ru_maxrss) / (1024.0 * 1024.0);
  add(r, "depth 16 budget", secs < 60.0 && gb < 2.0,
      std::to_string(b16.size()) + " elements in " + g6(secs) + " s, peak RSS " + g6(gb) + " GB (limits 60 s, 2 GB)");
  return r;
}

SuiteResult criterion_geometry() {
  SuiteResult r{"criterion5", {}, 0.0};
  const Group g = Group::make(k444(), 12);
  const std::vector<double> ts = {g.th, 4.0, 16.0, 64.0};
  double slack = std::numeric_limits<double>::infinity();
  std::vector<double> haus;
  for (double t : ts) {
    const auto st = Stage::make(g, t, 12);
    for (int d : {4, 8, 12}) slack = std::min(slack, build_approx(*st->tb, st->vs, st->chart, d).containment_slack());
    haus.push_back(hausdorff_to_P(st->body).outer);
  }
  add(r, "inner in outer", slack >= -1e-10, "min slack " + g6(slack) + " over t in {th,4,16,64} x depth {4,8,12}");
  bool dec = true;
  std::string seq;
  for (std::size_t k = 0; k < haus.size(); ++k) {
    if (k && !(haus[k] < haus[k - 1])) dec = false;
    seq += (k ? " > " : "") + g6(haus[k]);
  }
  add(r, "Hausdorff(outer, P) decreasing", dec, seq);
  const GramLikeMatrix a = family_matrix(k444(), 64.0);
  const Chart chart = chart_for(a);
  const double d = (chart.to_chart(a.row(0)) - chart.vertex(1)).norm();
  add(r, "f_0(64) near p_1", d < 0.05, "chart distance " + g6(d) + " (limit 0.05)");
  return r;
}

SuiteResult criterion_hilbert() {
  SuiteResult r{"criterion6", {}, 0.0};
  const GramLikeMatrix a = family_matrix(k444(), std::sqrt(2.0));
  const Chart chart = chart_for(a);
  const ConvexApprox p = simplex_body(chart);
  std::mt19937_64 rng(6);
  std::exponential_distribution<double> expo(1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    Vec x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x(i) = 0.02 + expo(rng);
      y(i) = 0.02 + expo(rng);
    }
    x /= x.sum();
    y /= y.sum();
    const DistanceBound d = distance(p, barycentric_point(chart, x), barycentric_point(chart, y));
    const double o = simplex_distance(x, y);
    worst = std::max({worst, std::abs(d.lower - o), std::abs(d.upper - o)});
  }
  add(r, "body P vs simplex formula", worst <= 1e-10, "max deviation " + g6(worst) + " over 100 pairs");
  const double v = cross_ratio_distance(Vec::Constant(1, -1.0), Vec::Constant(1, 0.0), Vec::Constant(1, 0.5),
                                        Vec::Constant(1, 1.0));
  add(r, "half log 3", std::abs(v - 0.5 * std::log(3.0)) <= 1e-9 && std::abs(v - 0.5493061) <= 5e-8,
      "value " + fmt("%.12f", v));

  const Group g = Group::make(k444(), 12);
  const auto st = Stage::make(g, g.th, 12);
  const Vec base = st->chart.base_point();
  const Vec x0 = st->chart.to_chart(base);
  double gap = 0.0;
  std::size_t n = 0;
  for (std::size_t e = 1; e < st->tb->size(); ++e) {
    const Vec h = st->tb->forward(e) * base;
    const DistanceBound d = distance(st->body, x0, st->chart.to_chart(h));
    if (d.upper > 4.0) continue;
    gap = std::max(gap, d.gap());
    ++n;
  }
  add(r, "gap within R <= 4", gap < 0.02, "max gap " + g6(gap) + " over " + std::to_string(n) +
      " orbit points at t_h, depth 12 (limit 0.02)");
  return r;
}

SuiteResult from_suite(const std::string& name, const SuiteResult& s) {
  SuiteResult r{name, s.checks, s.seconds};
  return r;
}

struct EntropyRun {
  double t;
  EntropyEstimate est;
};

std::vector<EntropyRun> entropy_runs(const Group& g, const std::vector<double>& ts) {
  std::vector<EntropyRun> out;
  for (double t : ts) {
    const auto st = Stage::make(g, t, 12);
    out.push_back({t, orbit_growth(*st->tb, st->body, st->chart.base_point())});
  }
  return out;
}

std::string describe(const EntropyRun& e) {
  return "t=" + g6(e.t) + ": " + fmt("%.4f", e.est.delta_hat) + " [" + fmt("%.4f", e.est.delta_low) + ", " +
         fmt("%.4f", e.est.delta_high) + "]";
}

SuiteResult criterion_entropy_anchor() {
  SuiteResult r{"criterion9", {}, 0.0};
  const auto t0 = Clock::now();
  const Group g = Group::make(k444(), 16);
  const EntropyRun e = entropy_runs(g, {g.th}).front();
  add(r, "delta_hat(t_h) in [0.8, 1.05]", e.est.delta_hat >= 0.8 && e.est.delta_hat <= 1.05,
      describe(e) + ", depth 16, window [" + g6(e.est.window.r_min) + ", " + g6(e.est.window.r_max) + "], gap " +
          g6(e.est.gap_max));
  add(r, "truncation guard", static_cast<double>(e.est.count_at_rmax) < 0.1 * static_cast<double>(e.est.ball_size),
      std::to_string(e.est.count_at_rmax) + " of " + std::to_string(e.est.ball_size) + " elements at R_max");
  add(r, "runtime", seconds_since(t0) < 600.0, g6(seconds_since(t0)) + " s");
  return r;
}

SuiteResult criterion_trend() {
  SuiteResult r{"criterion10", {}, 0.0};
  const Group g = Group::make(k444(), 16);
  const double th = g.th;
  const std::vector<EntropyRun> up = entropy_runs(g, {th, 2 * th, 4 * th, 8 * th});
  const std::vector<EntropyRun> down = entropy_runs(g, {th / 2, th / 4, th / 8});
  std::vector<EntropyRun> down_full{up.front()};
  const std::vector<EntropyRun>* sequences[] = {&up, &down_full};
  down_full.insert(down_full.end(), down.begin(), down.end());
  for (const auto* seq : sequences) {
    bool dec = true;
    std::string s;
    for (std::size_t k = 0; k < seq->size(); ++k) {
      if (k && !((*seq)[k].est.delta_high < (*seq)[k - 1].est.delta_low)) dec = false;
      s += (k ? "; " : "") + describe((*seq)[k]);
    }
    add(r, seq == &up ? "decreasing for t > t_h" : "decreasing for t < t_h", dec, s);
    const EntropyRun& end = seq->back();
    add(r, seq == &up ? "collapse at 8 t_h" : "collapse at t_h/8",
        end.est.delta_high <= 0.5 * up.front().est.delta_low,
        "upper end " + fmt("%.4f", end.est.delta_high) + " vs half of the lower end at t_h " +
            fmt("%.4f", 0.5 * up.front().est.delta_low));
  }
  double ceiling = 0.0;
  for (const auto* seq : {&up, &down})
    for (const EntropyRun& e : *seq) ceiling = std::max(ceiling, e.est.delta_high);
  add(r, "ceiling n-1+0.05", ceiling <= 1.05, "largest upper end " + fmt("%.4f", ceiling));
  bool sym = true;
  std::string s;
  for (std::size_t k = 1; k < up.size(); ++k) {
    const EntropyEstimate& a = up[k].est;
    const EntropyEstimate& b = down[k - 1].est;
    const double allowed = 0.5 * (a.delta_high - a.delta_low) + 0.5 * (b.delta_high - b.delta_low);
    const double diff = std::abs(a.delta_hat - b.delta_hat);
    sym = sym && diff <= allowed;
    s += (k > 1 ? "; " : "") + std::string("t=") + g6(up[k].t) + " vs 2/t: diff " + g6(diff) + " allowed " + g6(allowed);
  }
  add(r, "relabel symmetry t <-> 2/t", sym, s);
  return r;
}

SuiteResult criterion_sandwich() {
  SuiteResult r{"criterion11", {}, 0.0};
  const Group g = Group::make(k444(), 16);
  const double th = g.th;
  for (double t : {th, 2 * th, 4 * th, 8 * th}) {
    const auto st = Stage::make(g, t, 12);
    const EntropyEstimate e = orbit_growth(*st->tb, st->body, st->chart.base_point());
    const MetricGraph mg = build_skeleton(*st->tb, st->body);
    const GraphEntropy gb = graph_entropy(mg, GraphEntropyMode::Bounds);
    const GraphEntropy gu = graph_entropy(mg, GraphEntropyMode::Unit);
    const double lt = mg.reference.l_t;
    add(r, "delta_hat <= graph + 0.05 at t=" + g6(t), e.delta_hat <= gb.slope + 0.05,
        "delta_hat " + fmt("%.4f", e.delta_hat) + ", graph entropy (bounds) " + fmt("%.4f", gb.slope));
    add(r, "graph <= unit/l_t + 0.05 at t=" + g6(t), gb.slope_high <= gu.slope / lt + 0.05,
        "graph entropy upper estimate " + fmt("%.4f", gb.slope_high) + ", unit " + fmt("%.4f", gu.slope) + ", l_t " +
            fmt("%.4f", lt) + ", unit/l_t " + fmt("%.4f", gu.slope / lt));
  }
  return r;
}

// Tag balance and attribute quoting; enough for a generated document.
bool well_formed_xml(const std::string& s, std::string& why) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  while ((i = s.find('<', i)) != std::string::npos) {
    const std::size_t end = s.find('>', i);
    if (end == std::string::npos) {
      why = "unterminated tag";
      return false;
    }
    std::string tag = s.substr(i + 1, end - i - 1);
    i = end + 1;
    if (tag.empty()) {
      why = "empty tag";
      return false;
    }
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (std::count(tag.begin(), tag.end(), '"') % 2) {
      why = "unbalanced quotes in <" + tag + ">";
      return false;
    }
    if (tag[0] == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) {
        why = "unexpected </" + name + ">";
        return false;
      }
      stack.pop_back();
      continue;
    }
    const bool self = tag.back() == '/';
    const std::string name = tag.substr(0, tag.find_first_of(" /\t\n"));
    if (!self) stack.push_back(name);
  }
  if (!stack.empty()) {
    why = "unclosed <" + stack.back() + ">";
    return false;
  }
  return true;
}

std::size_t occurrences(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t i = s.find(needle); i != std::string::npos; i = s.find(needle, i + 1)) ++n;
  return n;
}

SuiteResult criterion_render() {
  SuiteResult r{"criterion12", {}, 0.0};
  const Group g = Group::make(k444(), 10);
  for (double t : {g.th, 8.0, 0.25}) {
    const auto st = Stage::make(g, t, 10);
    const TranslateSet tr = simplex_translates(*st->tb, st->chart);
    RenderStats stats;
    const std::string svg = render_svg(*st->tb, tr, st->vs, st->body, {}, &stats);
    std::string why;
    const bool xml = well_formed_xml(svg, why);
    const std::size_t polys = occurrences(svg, "<polygon ");
    const std::size_t expected = g.ball.size() - tr.degenerate;
    const bool outlines = occurrences(svg, "id=\"inner-hull\"") == 1 && occurrences(svg, "id=\"outer-boundary\"") == 1;
    add(r, "svg t=" + g6(t), xml && polys == expected && outlines && svg.find("viewBox=\"0 0 1000 1000\"") != std::string::npos,
        std::string(xml ? "well-formed" : "malformed: " + why) + ", " + std::to_string(polys) + " polygons for " +
            std::to_string(expected) + " non-degenerate elements (" + std::to_string(tr.degenerate) +
            " degenerate), outlines " + (outlines ? "present" : "missing"));
  }
  return r;
}

}  // namespace

std::string criterion_title(int id) {
  static const char* titles[] = {"classification",   "moduli",         "representation", "orbit engine",
                                 "geometry",         "Hilbert metric", "lemma suite",    "vertex ratio inequality",
                                 "entropy anchor",   "entropy trend",  "entropy sandwich", "render"};
  if (id < 1 || id > kCriteria) throw InputError("criterion out of range");
  return titles[id - 1];
}

SuiteResult run_criterion(int id) {
  const auto t0 = Clock::now();
  SuiteOptions o;
  o.seed = 20240601;
  SuiteResult r;
  switch (id) {
    case 1: r = criterion_classification(); break;
    case 2: r = criterion_moduli(); break;
    case 3: r = criterion_representation(); break;
    case 4: r = criterion_orbit(); break;
    case 5: r = criterion_geometry(); break;
    case 6: r = criterion_hilbert(); break;
    case 7: r = from_suite("criterion7", suite_lemmas(o)); break;
    case 8: r = from_suite("criterion8", suite_propmain(o)); break;
    case 9: r = criterion_entropy_anchor(); break;
    case 10: r = criterion_trend(); break;
    case 11: r = criterion_sandwich(); break;
    case 12: r = criterion_render(); break;
    default: throw InputError("criterion out of range");
  }
  r.seconds = seconds_since(t0);
  return r;
}

}  // namespace hcox::cli
