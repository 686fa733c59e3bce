#include "hcox_cli/run.hpp"

#include "hcox_cli/battery.hpp"
#include "pipeline.hpp"

#include "hcox/hilbert.hpp"
#include "hcox/render.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hcox::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

double parse_number(const std::string& token) {
  const std::string s = trim(token);
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const double a = std::stod(s.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(s);
      const std::string rest = s.substr(slash + 1);
      const double b = std::stod(rest, &used);
      if (used != rest.size() || b == 0.0) throw std::invalid_argument(s);
      return a / b;
    }
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw InputError("cannot parse number '" + token + "'");
  }
}

Vec parse_vector(const std::string& text) {
  const std::vector<double> v = parse_list(text);
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Eigen::Index>(k)) = v[k];
  return out;
}

Mat read_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read matrix file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  if (j.is_object()) j = j.at("matrix");
  if (!j.is_array() || j.empty()) throw InputError(path + ": expected a square array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Mat m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw InputError(path + ": matrix is not square");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

int body_depth(const RunConfig& c) { return c.body_depth.value_or(std::min(c.depth, 12)); }

std::vector<double> parameters(const RunConfig& c, double th, std::vector<double> fallback) {
  if (c.t_list.empty()) return fallback;
  std::vector<double> out;
  for (const std::string& s : c.t_list) out.push_back(parse_parameter(s, th));
  return out;
}

double single_parameter(const RunConfig& c, double th) {
  if (c.t_list.size() != 1) throw InputError(c.command + " needs exactly one --t");
  return parse_parameter(c.t_list.front(), th);
}

using Row = std::vector<std::string>;

// CSV with a header row, or a JSON array of objects keyed by the header.
void emit_table(const RunConfig& c, const Row& header, const std::vector<Row>& rows, std::ostream& out) {
  if (c.format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Row& r : rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t k = 0; k < header.size(); ++k) {
        const auto v = nlohmann::ordered_json::parse(r[k], nullptr, false);
        obj[header[k]] = v.is_discarded() ? nlohmann::ordered_json(nullptr) : v;
      }
      arr.push_back(obj);
    }
    out << arr.dump() << '\n';
    return;
  }
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (const Row& r : rows) {
    for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << r[k];
    out << '\n';
  }
}

const Row kEntropyHeader = {"t",       "delta_lower", "delta_upper", "gap_max",  "count_at_Rmax",
                            "delta_hat", "R_min",     "R_max",       "ball_size"};

Row entropy_row(double t, const EntropyEstimate& e) {
  return {num(t),          num(e.delta_low),       num(e.delta_high),      num(e.gap_max),
          std::to_string(e.count_at_rmax), num(e.delta_hat), num(e.window.r_min), num(e.window.r_max),
          std::to_string(e.ball_size)};
}

EntropyOptions entropy_options(const RunConfig& c) {
  EntropyOptions o;
  if (c.window) o.window = GrowthWindow{(*c.window)[0], (*c.window)[1]};
  o.threads = c.threads;
  return o;
}

int print_suite(const SuiteResult& s, std::ostream& out) {
  for (const CheckLine& l : s.checks)
    out << (l.pass ? "PASS " : "FAIL ") << s.name << '/' << l.name << ": " << l.detail << '\n';
  return s.pass() ? Ok : VerificationFailed;
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
  const CoxeterGraph g = CoxeterGraph::parse(c.graph);
  const GraphClass cls = classify(g);
  const LoopInfo loop = find_loop(g);
  json j;
  j["tag"] = std::string(to_string(cls.tag));
  j["signature"] = {cls.signature.positive, cls.signature.zero, cls.signature.negative};
  j["has_loop"] = loop.has_loop;
  j["circuit"] = loop.circuit ? json(*loop.circuit) : json(nullptr);
  out << j.dump() << '\n';
  return Ok;
}

int cmd_family(const RunConfig& c, std::ostream& out) {
  const CoxeterGraph g = CoxeterGraph::parse(c.graph);
  require_lanner_circuit(g);
  const double t = single_parameter(c, hyperbolic_parameter(g));
  out << matrix_json(family_matrix(g, t).entries()).dump() << '\n';
  return Ok;
}

int cmd_equiv(const RunConfig& c, std::ostream& out) {
  if (c.a.empty() || c.b.empty()) throw InputError("equiv needs --a and --b");
  const GramLikeMatrix a(read_matrix(c.a)), b(read_matrix(c.b));
  const auto conj = diag_equivalent(a, b);
  if (!conj) {
    out << "inequivalent\n";
    return Ok;
  }
  json j;
  j["lambda"] = std::vector<double>(conj->lambdas().data(), conj->lambdas().data() + conj->lambdas().size());
  out << j.dump() << '\n';
  return Ok;
}

int cmd_enumerate(const RunConfig& c, std::ostream& out) {
  const Group g = Group::make(CoxeterGraph::parse(c.graph), c.depth, c.max_elements, c.threads);
  std::vector<Row> rows;
  for (std::size_t k = 0; k < g.ball.sphere_sizes().size(); ++k)
    rows.push_back({std::to_string(k), std::to_string(g.ball.sphere_sizes()[k])});
  emit_table(c, {"depth", "count"}, rows, out);
  return Ok;
}

int cmd_render(const RunConfig& c, std::ostream& out) {
  if (c.out.empty()) throw InputError("render needs --out");
  const Group g = Group::make(CoxeterGraph::parse(c.graph), c.depth, c.max_elements, c.threads);
  const auto st = Stage::make(g, single_parameter(c, g.th), body_depth(c));
  const TranslateSet tr = simplex_translates(*st->tb, st->chart);
  RenderStats stats;
  const std::string svg = render_svg(*st->tb, tr, st->vs, st->body, {}, &stats);
  std::ofstream f(c.out);
  if (!f) throw InputError("cannot write " + c.out);
  f << svg;
  json j;
  j["out"] = c.out;
  j["polygons"] = stats.polygons;
  j["degenerate"] = stats.skipped;
  j["ball_size"] = g.ball.size();
  out << j.dump() << '\n';
  return Ok;
}

int cmd_distance(const RunConfig& c, std::ostream& out) {
  if (c.x.empty() || c.y.empty()) throw InputError("distance needs --x and --y");
  const Group g = Group::make(CoxeterGraph::parse(c.graph), c.depth, c.max_elements, c.threads);
  const auto st = Stage::make(g, single_parameter(c, g.th), body_depth(c));
  const Vec x = parse_vector(c.x), y = parse_vector(c.y);
  if (x.size() != st->chart.n() + 1 || y.size() != x.size()) throw InputError("barycentric points need n+1 entries");
  const DistanceBound d =
      distance(st->body, st->chart.from_barycentric(x), st->chart.from_barycentric(y));
  emit_table(c, {"lower", "upper"}, {{num(d.lower), num(d.upper)}}, out);
  return Ok;
}

int cmd_entropy(const RunConfig& c, std::ostream& out, bool sweep) {
  const Group g = Group::make(CoxeterGraph::parse(c.graph), c.depth, c.max_elements, c.threads);
  std::vector<double> ts;
  if (sweep) {
    if (c.t_list.empty()) throw InputError("sweep needs --t-list");
    ts = parameters(c, g.th, {});
  } else {
    ts = {single_parameter(c, g.th)};
  }
  std::vector<Row> rows;
  for (double t : ts) {
    const auto st = Stage::make(g, t, body_depth(c));
    rows.push_back(entropy_row(t, orbit_growth(*st->tb, st->body, st->chart.base_point(), entropy_options(c))));
  }
  emit_table(c, kEntropyHeader, rows, out);
  return Ok;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  SuiteOptions o;
  o.graph = c.graph;
  o.depth = c.depth;
  o.body_depth = body_depth(c);
  o.samples = c.samples;
  o.seed = *c.seed;
  if (!c.t_list.empty()) o.t_list = parameters(c, hyperbolic_parameter(CoxeterGraph::parse(c.graph)), {});
  if (c.suite == "propmain") return print_suite(suite_propmain(o), out);
  if (c.suite == "metriccomp") return print_suite(suite_metriccomp(o), out);
  if (c.suite == "lemmas") return print_suite(suite_lemmas(o), out);
  int status = Ok;
  for (int id = 1; id <= kCriteria; ++id) {
    const SuiteResult r = run_criterion(id);
    out << (r.pass() ? "PASS" : "FAIL") << " criterion " << id << " (" << criterion_title(id) << ")\n";
    for (const CheckLine& l : r.checks)
      out << "  " << (l.pass ? "ok   " : "FAIL ") << l.name << ": " << l.detail << '\n';
    if (!r.pass()) status = VerificationFailed;
  }
  return status;
}

}  // namespace

double parse_parameter(const std::string& token, double th) {
  std::string s;
  for (char ch : token)
    if (ch != ' ' && ch != '*') s += ch;
  const auto pos = s.find("th");
  if (pos == std::string::npos) return parse_number(s);
  const std::string pre = s.substr(0, pos), post = s.substr(pos + 2);
  double v = th * (pre.empty() ? 1.0 : parse_number(pre));
  if (!post.empty()) {
    if (post[0] != '/') throw InputError("cannot parse parameter '" + token + "'");
    v /= parse_number(post.substr(1));
  }
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& s : split(text, ',')) out.push_back(parse_number(s));
  return out;
}

void RunConfig::validate() const {
  static const std::vector<std::string> commands = {"classify", "family",  "equiv", "enumerate", "render",
                                                    "distance", "entropy", "sweep", "verify"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw InputError("unknown command '" + command + "'");
  if (depth < 1) throw InputError("depth must be >= 1");
  if (body_depth && (*body_depth < 0 || *body_depth > depth)) throw InputError("body depth must lie in [0, depth]");
  if (window && !((*window)[0] > 0.0 && (*window)[0] < (*window)[1]))
    throw InputError("window must satisfy 0 < a < b");
  if (command == "verify" && !seed) throw InputError("verify needs --seed");
  if (command == "verify" && suite != "propmain" && suite != "metriccomp" && suite != "lemmas" && suite != "all")
    throw InputError("unknown suite '" + suite + "'");
  if (!format.empty() && format != "csv" && format != "json" && format != "svg")
    throw InputError("format must be csv, json or svg");
  const bool tabular = command == "enumerate" || command == "distance" || command == "entropy" || command == "sweep";
  if (format == "svg" && command != "render") throw InputError("svg output is only produced by render");
  if (format == "csv" && !tabular) throw InputError(command + " has no csv output");
  if (format == "json" && (command == "render" || command == "verify")) throw InputError(command + " has no json output");
  if (max_elements == 0) throw InputError("max elements must be positive");
  if (samples < 0) throw InputError("samples must be nonnegative");
  for (const std::string& t : t_list)
    if (!(parse_parameter(t, 1.0) > 0.0)) throw InputError("t must be positive");
}

void apply_json(RunConfig& c, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");
  static const std::vector<std::string> known = {"command", "graph", "t",       "t_list",  "depth", "body_depth",
                                                 "window",  "seed",  "out",     "format",  "max_elements",
                                                 "suite",   "x",     "y",       "a",       "b",     "samples",
                                                 "threads"};
  auto text_of = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  try {
    for (const auto& [key, v] : j.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) throw InputError("config: unknown key '" + key + "'");
      if (key == "command") c.command = v.get<std::string>();
      else if (key == "graph") c.graph = v.get<std::string>();
      else if (key == "t") c.t_list = {text_of(v)};
      else if (key == "t_list") {
        c.t_list.clear();
        for (const json& e : v) c.t_list.push_back(text_of(e));
      } else if (key == "depth") c.depth = v.get<int>();
      else if (key == "body_depth") c.body_depth = v.get<int>();
      else if (key == "window") c.window = std::array<double, 2>{v.at(0).get<double>(), v.at(1).get<double>()};
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "format") c.format = v.get<std::string>();
      else if (key == "max_elements") c.max_elements = v.get<std::size_t>();
      else if (key == "suite") c.suite = v.get<std::string>();
      else if (key == "x") c.x = text_of(v);
      else if (key == "y") c.y = text_of(v);
      else if (key == "a") c.a = v.get<std::string>();
      else if (key == "b") c.b = v.get<std::string>();
      else if (key == "samples") c.samples = v.get<int>();
      else if (key == "threads") c.threads = v.get<unsigned>();
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (j.contains("x") && j["x"].is_array()) {
    std::string s;
    for (const json& e : j["x"]) s += (s.empty() ? "" : ",") + e.dump();
    c.x = s;
  }
  if (j.contains("y") && j["y"].is_array()) {
    std::string s;
    for (const json& e : j["y"]) s += (s.empty() ? "" : ",") + e.dump();
    c.y = s;
  }
}

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Projective Coxeter triangle groups: orbits, Hilbert metric bounds and entropy", "hcox"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::string config_path, graph, t, t_list, window, suite, out, format, x, y, a, b;
  int depth = 0, body = 0, samples = 0;
  std::uint64_t seed = 0;
  std::size_t max_elements = 0;
  unsigned threads = 0;
  auto* o_config = app.add_option("--config", config_path, "JSON file with any of the flag values");
  auto* o_graph = app.add_option("--graph", graph, "graph spec, e.g. n=2;m01=4;m12=4;m02=4");
  auto* o_t = app.add_option("--t", t, "parameter: number, th, 2th, th/4");
  auto* o_tl = app.add_option("--t-list", t_list, "comma separated parameters");
  auto* o_depth = app.add_option("--depth", depth, "word length of the orbit ball");
  auto* o_body = app.add_option("--body-depth", body, "word length used for the convex bodies");
  auto* o_window = app.add_option("--window", window, "entropy window a,b");
  auto* o_seed = app.add_option("--seed", seed, "sampling seed");
  auto* o_out = app.add_option("--out", out, "output file");
  auto* o_format = app.add_option("--format", format, "csv, json or svg");
  auto* o_max = app.add_option("--max-elements", max_elements, "orbit ball element cap");
  auto* o_suite = app.add_option("--suite", suite, "propmain, metriccomp, lemmas or all");
  auto* o_x = app.add_option("--x", x, "barycentric point");
  auto* o_y = app.add_option("--y", y, "barycentric point");
  auto* o_a = app.add_option("--a", a, "matrix JSON file");
  auto* o_b = app.add_option("--b", b, "matrix JSON file");
  auto* o_samples = app.add_option("--samples", samples, "sample count override");
  auto* o_threads = app.add_option("--threads", threads, "worker threads, 0 for all cores");
  for (const char* name : {"classify", "family", "equiv", "enumerate", "render", "distance", "entropy", "sweep", "verify"})
    app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw InputError(e.what());
  }

  RunConfig c;
  if (o_config->count()) {
    std::ifstream f(config_path);
    if (!f) throw InputError("cannot read config " + config_path);
    std::stringstream ss;
    ss << f.rdbuf();
    apply_json(c, ss.str());
  }
  if (!app.get_subcommands().empty()) c.command = app.get_subcommands().front()->get_name();
  if (c.command.empty()) throw InputError("a subcommand is required");
  if (o_graph->count()) c.graph = graph;
  if (o_t->count()) c.t_list = {t};
  if (o_tl->count()) c.t_list = split(t_list, ',');
  if (o_depth->count()) c.depth = depth;
  if (o_body->count()) c.body_depth = body;
  if (o_window->count()) {
    const std::vector<double> w = parse_list(window);
    if (w.size() != 2) throw InputError("window needs two values a,b");
    c.window = std::array<double, 2>{w[0], w[1]};
  }
  if (o_seed->count()) c.seed = seed;
  if (o_out->count()) c.out = out;
  if (o_format->count()) c.format = format;
  if (o_max->count()) c.max_elements = max_elements;
  if (o_suite->count()) c.suite = suite;
  if (o_x->count()) c.x = x;
  if (o_y->count()) c.y = y;
  if (o_a->count()) c.a = a;
  if (o_b->count()) c.b = b;
  if (o_samples->count()) c.samples = samples;
  if (o_threads->count()) c.threads = threads;
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream&) {
  c.validate();
  if (c.command == "classify") return cmd_classify(c, out);
  if (c.command == "family") return cmd_family(c, out);
  if (c.command == "equiv") return cmd_equiv(c, out);
  if (c.command == "enumerate") return cmd_enumerate(c, out);
  if (c.command == "render") return cmd_render(c, out);
  if (c.command == "distance") return cmd_distance(c, out);
  if (c.command == "entropy") return cmd_entropy(c, out, false);
  if (c.command == "sweep") return cmd_entropy(c, out, true);
  return cmd_verify(c, out);
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    return run(parse_args(argc, argv), out, err);
  } catch (const CLI::CallForHelp&) {
    err << "usage: hcox <classify|family|equiv|enumerate|render|distance|entropy|sweep|verify> [options]\n"
           "options: --graph --t --t-list --depth --body-depth --window --seed --out --format --max-elements\n"
           "         --suite --x --y --a --b --samples --threads --config\n";
    return Ok;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return InputFailure;
  } catch (const GuardError& e) {
    err << "guard exceeded: " << e.what() << '\n';
    return InputFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return VerificationFailed;
  }
}

}  // namespace hcox::cli
