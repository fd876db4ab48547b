#include "kd/cli.hpp"

#include "kd/error.hpp"
#include "kd/report.hpp"
#include "kd/verify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace kd {

namespace {

constexpr int kUncheckedCapLimit = 28;

struct Config {
  std::string pd;
  std::string name;
  std::string chords;
  std::string method = "all";
  std::string state = "A";
  std::string out;
  std::string cache;
  int cap = 24;
  int state_cap = 20;
  int workers = 1;
  bool force_cap = false;
  bool plain = false;
  bool with_det = false;
  std::vector<int> pretzel_params;
  int twist_p = 0;
  int twist_q = 0;
  int random_count = 40;
  std::uint64_t seed = 20240601;
};

class Stopwatch {
 public:
  template <class Fn>
  auto time(const std::string& label, Fn fn) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    timings_[label] = std::round(ms.count() * 1000.0) / 1000.0;
    return result;
  }
  const Json& timings() const { return timings_; }

 private:
  Json timings_ = Json::object();
};

EngineOptions engine_options(const Config& cfg) {
  EngineOptions e;
  e.scan_cap = cfg.cap;
  e.state_cap = cfg.state_cap;
  e.workers = cfg.workers;
  return e;
}

PDCode load_diagram(const Config& cfg) {
  if (!cfg.pd.empty() && !cfg.name.empty()) fail(ErrorKind::BadInput, "give either --pd or --name, not both");
  if (!cfg.pd.empty()) return parse_pd(cfg.pd);
  if (!cfg.name.empty()) return KnotTable::bundled().lookup(cfg.name);
  fail(ErrorKind::BadInput, "no diagram given; use --pd or --name");
}

State parse_state(const std::string& text, int n) {
  if (text == "A" || text == "a") return State::all(n, Smoothing::A);
  if (text == "B" || text == "b") return State::all(n, Smoothing::B);
  if (static_cast<int>(text.size()) != n)
    fail(ErrorKind::BadInput, "state must be A, B, or one letter per crossing (" + std::to_string(n) + ")");
  State s = State::all(n, Smoothing::A);
  for (int x = 0; x < n; ++x) {
    const char c = text[static_cast<std::size_t>(x)];
    if (c == 'B' || c == 'b') s.set(x, Smoothing::B);
    else if (c != 'A' && c != 'a') fail(ErrorKind::BadInput, std::string("bad state letter '") + c + "'");
  }
  return s;
}

std::string state_string(const State& s) {
  std::string out;
  for (int x = 0; x < s.size(); ++x) out += s[x] == Smoothing::A ? 'A' : 'B';
  return out;
}

Json pd_input(const PDCode& pd) { return Json{{"pd", pd.to_string()}, {"crossings", pd.crossing_count()}}; }

// ---------------------------------------------------------------------------
// Commands. Each returns the report body; `schema` and `command` are added by
// the caller.

Json cmd_bracket(const Config& cfg, Stopwatch& sw) {
  const PDCode pd = load_diagram(cfg);
  const EngineOptions eng = engine_options(cfg);
  const LaurentPoly b = sw.time("dessin", [&] { return bracket_via_dessin(pd, eng); });
  Json oracle;
  if (pd.crossing_count() <= eng.state_cap) {
    const LaurentPoly o = sw.time("state_sum", [&] { return state_sum_bracket(pd, eng.bracket()); });
    oracle = Json{{"method", "state_sum"}, {"agrees", o == b}};
  } else {
    const LaurentPoly o = sw.time("contraction", [&] { return contraction_bracket(pd); });
    oracle = Json{{"method", "contraction"}, {"agrees", o == b}};
  }
  if (!oracle["agrees"].get<bool>()) fail(ErrorKind::Internal, "bracket routes disagree");
  return Json{{"input", pd_input(pd)}, {"bracket", poly_to_json(b)}, {"oracle", oracle}};
}

Json cmd_jones(const Config& cfg, Stopwatch& sw) {
  const PDCode pd = load_diagram(cfg);
  const EngineOptions eng = engine_options(cfg);
  const LaurentPoly j = sw.time("jones", [&] { return jones_polynomial(pd, eng); });
  return Json{{"input", pd_input(pd)}, {"writhe", writhe(pd)}, {"jones", poly_to_json(j, 'q')}};
}

Json cmd_det(const Config& cfg, Stopwatch& sw) {
  const PDCode pd = load_diagram(cfg);
  std::vector<DetMethod> methods;
  if (cfg.method != "all") {
    std::istringstream in(cfg.method);
    for (std::string m; std::getline(in, m, ',');) methods.push_back(parse_det_method(m));
  }
  const DeterminantReport r = sw.time("determinant", [&] { return determinant(pd, methods, engine_options(cfg)); });
  return Json{{"input", pd_input(pd)}, {"determinant", determinant_to_json(r)}};
}

Json cmd_dessin(const Config& cfg, Stopwatch& sw) {
  const PDCode pd = load_diagram(cfg);
  const State s = parse_state(cfg.state, pd.crossing_count());
  const Dessin d = sw.time("build", [&] { return build_dessin(pd, s); });
  const Counts c = dessin_counts(d);
  int loops = 0;
  for (int e = 0; e < d.edge_count(); ++e) loops += d.is_loop(e) ? 1 : 0;
  Json doc{{"input", pd_input(pd)}, {"state", state_string(s)}, {"counts", counts_to_json(c)}, {"loops", loops},
           {"dessin", d.to_string()}};
  if (c.k == 1) doc["dual_counts"] = counts_to_json(dessin_counts(dual(d)));
  return doc;
}

Json cmd_quasitrees(const Config& cfg, Stopwatch& sw) {
  const PDCode pd = load_diagram(cfg);
  const EngineOptions eng = engine_options(cfg);
  const Dessin d = all_a_dessin(pd);
  const QuasiTreeCounts q = sw.time("scan", [&] { return quasi_tree_counts(d, eng.scan()); });
  const QuasiTreeCounts qd = sw.time("dual_scan", [&] { return quasi_tree_counts(dual(d), eng.scan()); });
  return Json{{"input", pd_input(pd)},
              {"counts", counts_to_json(dessin_counts(d))},
              {"s", quasi_trees_to_json(q)},
              {"dual_s", quasi_trees_to_json(qd)},
              {"determinant", big_to_json(determinant_from_quasi_trees(q))}};
}

Json cmd_coeffs(const Config& cfg, Stopwatch& sw) {
  const PDCode pd = load_diagram(cfg);
  const EngineOptions eng = engine_options(cfg);
  const CoefficientTable top = sw.time("top", [&] { return coefficient_table(pd, eng); });
  const CoefficientTable low = sw.time("bottom", [&] { return coefficient_table(mirror(pd), eng); });
  Json doc{{"input", pd_input(pd)}, {"top", coefficients_to_json(top)}, {"bottom_of_mirror", coefficients_to_json(low)}};
  if (top.loopless) doc["a1_adequate"] = big_to_json(a1_adequate(all_a_dessin(pd)));
  return doc;
}

Json cmd_reduce(const Config& cfg, Stopwatch& sw) {
  const PDCode pd = load_diagram(cfg);
  const PDCode r = sw.time("reduce", [&] { return reduce_to_one_vertex(pd); });
  const bool preserved = sw.time("check", [&] { return contraction_bracket(r) == contraction_bracket(pd); });
  if (!preserved) fail(ErrorKind::Internal, "reduction changed the bracket");
  return Json{{"input", pd_input(pd)},
              {"before", counts_to_json(dessin_counts(all_a_dessin(pd)))},
              {"pd", r.to_string()},
              {"after", counts_to_json(dessin_counts(all_a_dessin(r)))},
              {"bracket_preserved", preserved}};
}

Json cmd_charpoly(const Config& cfg, Stopwatch& sw) {
  Json doc;
  ChordDiagram cd;
  if (!cfg.chords.empty()) {
    cd = ChordDiagram::parse(cfg.chords);
  } else {
    PDCode pd = load_diagram(cfg);
    doc["input"] = pd_input(pd);
    if (all_a_dessin(pd).vertex_count() != 1) {
      pd = reduce_to_one_vertex(pd);
      doc["reduced_pd"] = pd.to_string();
    }
    cd = to_chord_diagram(all_a_dessin(pd));
  }
  const ChordInvariants ci = sw.time("charpoly", [&] { return quasi_counts_and_det(cd); });
  Json coeffs = Json::array();
  for (const auto& c : ci.char_poly) coeffs.push_back(big_to_json(c));
  doc["chords"] = cd.to_string();
  doc["matrix"] = intersection_matrix(cd).rows();
  doc["char_poly"] = char_poly_to_string(ci.char_poly);
  doc["coefficients"] = coeffs;
  doc["s"] = quasi_trees_to_json(ci.counts);
  doc["determinant"] = big_to_json(ci.determinant);
  return doc;
}

Json family_report(const PDCode& pd, const Config& cfg, Stopwatch& sw) {
  Json doc{{"pd", pd.to_string()}, {"crossings", pd.crossing_count()}, {"counts", counts_to_json(dessin_counts(all_a_dessin(pd)))}};
  if (cfg.with_det) {
    const BigInt det = sw.time("jones_eval", [&] { return determinant_from_bracket(reference_bracket(pd, engine_options(cfg))); });
    doc["determinant"] = Json{{"jones", big_to_json(det)}};
  }
  return doc;
}

Json cmd_pretzel(const Config& cfg, Stopwatch& sw) {
  std::vector<int> p;
  std::vector<int> q;
  for (int x : cfg.pretzel_params) {
    if (x == 0) fail(ErrorKind::BadInput, "pretzel parameters must be nonzero");
    (x > 0 ? p : q).push_back(std::abs(x));
  }
  const PDCode pd = pretzel(p, q);
  Json doc = family_report(pd, cfg, sw);
  int sp = 0;
  int sq = 0;
  for (int x : p) sp += x;
  for (int x : q) sq += x;
  const int n = static_cast<int>(p.size());
  const int m = static_cast<int>(q.size());
  doc["expected_counts"] = Json{{"v", n - m + sq}, {"e", sp + sq}, {"f", m - n + sp}};
  if (cfg.with_det && !p.empty() && !q.empty()) {
    doc["determinant"]["closed_form"] = big_to_json(pretzel_determinant(p, q));
    doc["determinant"]["agree"] = doc["determinant"]["closed_form"] == doc["determinant"]["jones"];
  }
  return doc;
}

Json cmd_twist(const Config& cfg, Stopwatch& sw) {
  const PDCode pd = twist(cfg.twist_p, cfg.twist_q);
  Json doc = family_report(pd, cfg, sw);
  const Dessin d = all_a_dessin(pd);
  const WeightedDessin wd = contract_parallel(d);
  const LaurentPoly wb = sw.time("weighted", [&] { return weighted_bracket(wd, d.edge_count(), engine_options(cfg).scan()); });
  doc["weights"] = wd.weight;
  doc["weighted_bracket"] = poly_to_json(wb);
  doc["weighted_agrees"] = wb == reference_bracket(pd, engine_options(cfg));
  return doc;
}

Json cmd_verify(const Config& cfg, bool& all_passed) {
  VerifyOptions vo;
  vo.engine = engine_options(cfg);
  vo.random_count = cfg.random_count;
  vo.seed = cfg.seed;
  const auto results = run_verify(KnotTable::bundled(), vo);
  Json props = Json::array();
  all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    Json p{{"name", r.name}, {"passed", r.passed}, {"checks", r.checks}};
    if (!r.passed) p["detail"] = r.detail;
    props.push_back(p);
  }
  return Json{{"properties", props}, {"passed", all_passed}};
}

std::string verify_plain(const Json& doc) {
  std::ostringstream out;
  for (const auto& p : doc["properties"]) {
    out << (p["passed"].get<bool>() ? "PASS " : "FAIL ") << p["name"].get<std::string>() << " (" << p["checks"].get<long>()
        << " checks)";
    if (p.contains("detail")) out << ": " << p["detail"].get<std::string>();
    out << '\n';
  }
  out << (doc["passed"].get<bool>() ? "all properties passed\n" : "some properties failed\n");
  return out.str();
}

// ---------------------------------------------------------------------------
// Results cache: one JSON document per line, keyed by a hash of the inputs.

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string cache_key(const std::string& command, const Config& cfg) {
  std::string canonical = std::string(kEngineVersion) + '\n' + command + '\n';
  if (!cfg.pd.empty()) canonical += "pd=" + parse_pd(cfg.pd).to_string() + '\n';
  if (!cfg.name.empty()) canonical += "name=" + cfg.name + '\n' + "table=" + default_knot_table_path() + '\n';
  if (!cfg.chords.empty()) canonical += "chords=" + ChordDiagram::parse(cfg.chords).to_string() + '\n';
  canonical += "method=" + cfg.method + "\nstate=" + cfg.state + "\ncap=" + std::to_string(cfg.cap) +
               "\nstate_cap=" + std::to_string(cfg.state_cap) + "\ndet=" + std::to_string(cfg.with_det) + "\nparams=";
  for (int x : cfg.pretzel_params) canonical += std::to_string(x) + ',';
  canonical += "\ntwist=" + std::to_string(cfg.twist_p) + ',' + std::to_string(cfg.twist_q) + '\n';
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(canonical);
  return hex.str();
}

std::optional<Json> cache_lookup(const std::string& path, const std::string& key) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::optional<Json> hit;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const Json entry = Json::parse(line, nullptr, false);
    if (entry.is_discarded() || !entry.is_object()) continue;
    if (entry.value("key", "") == key && entry.value("version", "") == kEngineVersion && entry.contains("result"))
      hit = entry["result"];
  }
  return hit;
}

void cache_store(const std::string& path, const std::string& key, const Json& result) {
  std::ofstream out(path, std::ios::app);
  if (!out) fail(ErrorKind::BadInput, "cannot write cache '" + path + "'");
  out << Json{{"key", key}, {"version", kEngineVersion}, {"result", result}}.dump() << '\n';
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::BadInput: return kExitBadInput;
    case ErrorKind::CapExceeded: return kExitCap;
    case ErrorKind::Precondition: return kExitPrecondition;
    case ErrorKind::Internal: return kExitInternal;
  }
  return kExitInternal;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << Json{{"schema", kSchema}, {"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Exact link invariants from dessins (ribbon graphs)", "kdessin"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--pd", cfg.pd, "PD code, e.g. \"X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]\"");
  app.add_option("--name", cfg.name, "knot table entry (3_1, 4_1, 5_2, 6_2, 8_21)");
  app.add_option("--chords", cfg.chords, "chord diagram endpoint sequence, e.g. \"1 2 1 2\"");
  app.add_option("--method", cfg.method, "determinant methods: quasitree, jones, charpoly, treediff, all (comma separated)");
  app.add_option("--state", cfg.state, "smoothing state for `dessin`: A, B, or one letter per crossing");
  app.add_option("--cap", cfg.cap, "maximum edge count for sub-dessin scans")->check(CLI::PositiveNumber);
  app.add_option("--state-cap", cfg.state_cap, "maximum crossing count for the state sum")->check(CLI::PositiveNumber);
  app.add_flag("--force-cap", cfg.force_cap, "allow caps beyond " + std::to_string(kUncheckedCapLimit));
  app.add_option("--workers", cfg.workers, "worker threads for scans")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "write the report to this file");
  app.add_option("--cache", cfg.cache, "JSON-lines results cache");
  app.add_flag("--plain", cfg.plain, "plain text instead of JSON");

  app.add_subcommand("bracket", "Kauffman bracket by sub-dessin expansion, checked against an oracle");
  app.add_subcommand("jones", "Jones polynomial in q = A^-2 (t = q^2)");
  app.add_subcommand("det", "determinant by one or more methods");
  app.add_subcommand("dessin", "dessin of a state: counts and rotation system");
  app.add_subcommand("quasitrees", "spanning quasi-tree counts by genus");
  app.add_subcommand("coeffs", "extreme Jones coefficients with locality and closed-form checks");
  app.add_subcommand("reduce", "Reidemeister II moves to a one-vertex all-A dessin");
  app.add_subcommand("charpoly", "intersection matrix and characteristic polynomial");
  auto* pz = app.add_subcommand("pretzel", "generate K(p..., -q...); negative parameters are the q side");
  pz->add_option("params", cfg.pretzel_params, "column parameters")->required();
  pz->add_flag("--det", cfg.with_det, "compute the determinant");
  auto* tw = app.add_subcommand("twist", "generate the (p,q)-twist knot");
  tw->add_option("p", cfg.twist_p, "clasp crossings")->required()->check(CLI::PositiveNumber);
  tw->add_option("q", cfg.twist_q, "twist crossings")->required()->check(CLI::PositiveNumber);
  tw->add_flag("--det", cfg.with_det, "compute the determinant");
  auto* vf = app.add_subcommand("verify", "run the invariant suite over the bundled table and generated families");
  vf->add_option("--random", cfg.random_count, "random diagrams in the corpus");
  vf->add_option("--seed", cfg.seed, "corpus seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return kExitUsage;
  }
  if ((cfg.cap > kUncheckedCapLimit || cfg.state_cap > kUncheckedCapLimit) && !cfg.force_cap) {
    emit_error(err, "usage", "caps above " + std::to_string(kUncheckedCapLimit) + " need --force-cap");
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  int status = kExitOk;
  try {
    Json doc{{"schema", kSchema}, {"command", command}};
    std::string text;
    if (command == "verify") {
      bool passed = true;
      doc.update(cmd_verify(cfg, passed));
      status = passed ? kExitOk : kExitVerifyFailed;
      text = cfg.plain ? verify_plain(doc) : doc.dump(2) + '\n';
    } else {
      std::optional<Json> cached;
      std::string key;
      if (!cfg.cache.empty()) {
        key = cache_key(command, cfg);
        cached = cache_lookup(cfg.cache, key);
      }
      if (cached) {
        doc = *cached;
        doc["cached"] = true;
      } else {
        Stopwatch sw;
        Json body;
        if (command == "bracket") body = cmd_bracket(cfg, sw);
        else if (command == "jones") body = cmd_jones(cfg, sw);
        else if (command == "det") body = cmd_det(cfg, sw);
        else if (command == "dessin") body = cmd_dessin(cfg, sw);
        else if (command == "quasitrees") body = cmd_quasitrees(cfg, sw);
        else if (command == "coeffs") body = cmd_coeffs(cfg, sw);
        else if (command == "reduce") body = cmd_reduce(cfg, sw);
        else if (command == "charpoly") body = cmd_charpoly(cfg, sw);
        else if (command == "pretzel") body = cmd_pretzel(cfg, sw);
        else if (command == "twist") body = cmd_twist(cfg, sw);
        doc.update(body);
        doc["timings_ms"] = sw.timings();
        if (!cfg.cache.empty()) cache_store(cfg.cache, key, doc);
      }
      text = cfg.plain ? render_plain(doc) : doc.dump(2) + '\n';
    }
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out);
      if (!file) fail(ErrorKind::BadInput, "cannot write '" + cfg.out + "'");
      file << text;
    }
  } catch (const Error& e) {
    emit_error(err, to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    emit_error(err, "internal", e.what());
    return kExitInternal;
  }
  return status;
}

}  // namespace kd
