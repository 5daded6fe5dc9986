#include "lhyp/commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "lhyp/completion.hpp"
#include "lhyp/geodspace.hpp"
#include "lhyp/io.hpp"
#include "lhyp/isometry.hpp"
#include "lhyp/lenfun.hpp"
#include "lhyp/lspace.hpp"
#include "lhyp/relhyp.hpp"

namespace lhyp {

namespace {

// ordered "key: value" lines
class Report {
 public:
  explicit Report(std::string command) { add("command", std::move(command)); }
  void add(const std::string& k, const std::string& v) { lines_.push_back(k + ": " + v); }
  void add(const std::string& k, std::size_t v) { add(k, std::to_string(v)); }
  void add(const std::string& k, long v) { add(k, std::to_string(v)); }
  void add(const std::string& k, const char* v) { add(k, std::string(v)); }
  void flag(const std::string& k, bool v) { add(k, v ? "yes" : "no"); }
  void input(const std::string& path) {
    add("input", std::filesystem::path(path).filename().string() + " " + digest(read_file(path)));
  }
  void print(std::ostream& out) const {
    for (const auto& l : lines_) out << l << "\n";
  }

 private:
  std::vector<std::string> lines_;
};

std::string join_labels(const FiniteLambdaSpace& X, const std::vector<std::size_t>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + X.label(pts[i]);
  return s;
}

std::string join_words(const Group& G, const std::vector<Word>& ws) {
  std::string s;
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? " " : "") + G.format(ws[i]);
  return s;
}

mpq_class scalar_of(const QLexElem& q) {
  if (q.num().rank() != 1) throw InputError("expected a scalar, got " + render(q));
  return q.num()[0] / mpq_class(q.den());
}

FiniteLambdaSpace load_space(const std::string& path) {
  auto ext = std::filesystem::path(path).extension().string();
  if (ext == ".gg") return as_space(read_gg_file(path));
  return read_lms_file(path);
}

struct Common {
  unsigned threads = 0;
  bool timing = false;
  ScanOptions scan() const {
    ScanOptions o;
    o.workers = threads;
    return o;
  }
};

int cmd_check(const std::string& path, const Common& c, std::ostream& out) {
  Report r("check");
  r.input(path);
  auto X = load_space(path);
  r.add("points", X.size());
  auto bad = validate_metric(X);
  if (!bad.empty()) {
    r.add("metric", "violated");
    r.add("violation", bad[0].axiom + " at " + join_labels(X, bad[0].points));
    r.add("violations", bad.size());
    r.print(out);
    return kViolation;
  }
  r.add("metric", "ok");
  auto h = hyperbolicity(X, c.scan());
  r.add("delta_4pt", render(h.delta_4pt.value));
  if (!h.delta_4pt.at.empty()) r.add("delta_4pt_at", join_labels(X, h.delta_4pt.at));
  r.add("delta_triple", render(h.delta_triple_all.value));
  if (!h.delta_triple_all.at.empty()) r.add("delta_triple_at", join_labels(X, h.delta_triple_all.at));

  // (x.y)_v lies in [0, min(d(x,v), d(y,v))]
  std::size_t bounds_bad = 0;
  for (std::size_t v = 0; v < X.size(); ++v)
    for (std::size_t x = 0; x < X.size(); ++x)
      for (std::size_t y = 0; y < X.size(); ++y) {
        auto g = gromov_product(X, x, y, v);
        if (g.sign() < 0 || g > QLexElem(min(X.d(x, v), X.d(y, v)))) ++bounds_bad;
      }
  std::size_t doubling_bad = 0;
  for (std::size_t v = 0; v < X.size(); ++v)
    for (std::size_t t = 0; t < X.size(); ++t)
      if (h.delta_triple_at[t].value > h.delta_triple_at[v].value * 2L) ++doubling_bad;
  r.add("gromov_product_bounds", bounds_bad == 0 ? "ok" : "violated " + std::to_string(bounds_bad));
  r.add("basepoint_doubling", doubling_bad == 0 ? "ok" : "violated " + std::to_string(doubling_bad));
  auto cs = convex_support(X);
  if (cs < X.rank()) r.add("diagnostic", "all distances lie in the convex subgroup of index " + std::to_string(cs));
  r.print(out);
  return bounds_bad || doubling_bad ? kViolation : kClean;
}

int cmd_delta(const std::string& path, const Common& c, std::ostream& out) {
  Report r("delta");
  r.input(path);
  auto X = load_space(path);
  auto bad = validate_metric(X);
  if (!bad.empty()) {
    r.add("metric", "violated");
    r.add("violation", bad[0].axiom + " at " + join_labels(X, bad[0].points));
    r.print(out);
    return kViolation;
  }
  auto h = hyperbolicity(X, c.scan());
  r.add("delta_4pt", render(h.delta_4pt.value));
  for (std::size_t v = 0; v < X.size(); ++v) r.add("delta_at " + X.label(v), render(h.delta_triple_at[v].value));
  r.print(out);
  return kClean;
}

int cmd_complete(const std::string& path, const std::string& method, const std::string& delta_s,
                 const std::optional<unsigned long>& seed, const std::string& out_path, std::ostream& out) {
  Report r("complete");
  r.input(path);
  auto X = load_space(path);
  if (!X.z_valued()) throw InputError("completions need a Z-valued space");
  QLexElem delta = delta_s.empty() ? min_delta_4pt(X).value : parse_qlex(delta_s, Domain::Integer);
  r.add("method", method);
  r.add("delta", render(delta));
  CompletionOptions opt;
  opt.shuffle_seed = seed;
  const bool geodesic_in = is_geodesic(X).geodesic;
  CompletionGraph g;
  CgCertificate cert;
  bool ok = true;
  if (method == "gamma1") {
    auto res = gamma1(X, delta, opt);
    g = res.graph;
    cert.geodesic = res.geodesic;
    cert.delta_out = render(res.delta_out.value) + (res.delta_out.exact ? " exact" : " bound");
    cert.delta_bound = render(res.delta_bound);
    r.add("bridges", res.bridges);
    r.add("merges", res.merges);
    ok = !res.delta_out.exact || res.delta_out.value <= res.delta_bound;
  } else if (method == "gamma2") {
    auto rs = check_RS(X, delta);
    if (!rs.holds) {
      r.add("verdict", "RS fails");
      r.add("explanation", "no mid-point for " + join_labels(X, rs.witness));
      r.print(out);
      return kViolation;
    }
    auto res = gamma2(X, delta, opt);
    g = res.graph;
    cert.geodesic = res.geodesic;
    cert.delta_out = render(res.delta_out.value) + (res.delta_out.exact ? " exact" : " bound");
    cert.delta_bound = rational_str(res.delta_pp);
    cert.H = std::to_string(res.H);
    cert.B = rational_str(res.B);
    r.add("removed_pairs", res.removed.size());
    r.add("stretch", res.stretch);
    r.add("bridges", res.bridges);
    if (res.monotone) r.flag("monotone", *res.monotone);
    ok = (!res.delta_out.exact || scalar_of(res.delta_out.value) <= res.delta_pp) && res.monotone.value_or(true);
  } else {
    throw InputError("unknown method '" + method + "' (gamma1 or gamma2)");
  }
  r.add("vertices", g.size());
  r.add("edges", g.edges.size());
  r.flag("geodesic", cert.geodesic);
  r.add("delta_out", cert.delta_out);
  r.add("delta_bound", cert.delta_bound);
  if (!cert.H.empty()) r.add("H", cert.H), r.add("B", cert.B);
  if (geodesic_in && g.size() == X.size()) r.add("certificate", "identity");
  ok = ok && cert.geodesic;
  r.add("verdict", ok ? "ok" : "postcondition violated");
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw InputError("cannot write " + out_path);
    write_cg(f, g, cert);
    r.add("output", std::filesystem::path(out_path).filename().string());
    r.print(out);
  } else {
    r.print(out);
    write_cg(out, g, cert);
  }
  return ok ? kClean : kViolation;
}

int cmd_classify(const std::string& space, const std::string& perm, const std::string& delta_s, long K,
                 std::ostream& out) {
  Report r("classify");
  r.input(space);
  r.input(perm);
  auto X = load_space(space);
  auto pi = read_perm_file(perm);
  if (pi.size() != X.size()) throw InputError("permutation size differs from the space");
  auto iso = check_isometry(X, pi);
  if (!iso.isometry) {
    r.add("isometry", "no");
    if (iso.witness) r.add("witness", X.label(iso.witness->first) + " " + X.label(iso.witness->second));
    r.print(out);
    return kViolation;
  }
  QLexElem delta = delta_s.empty() ? min_delta_4pt(X).value : parse_qlex(delta_s, X.domain());
  auto cert = classify_certificate(X, pi, delta, K);
  r.add("isometry", "yes");
  r.add("order", perm_order(pi));
  r.add("delta", render(delta));
  r.add("K", K);
  std::string tag = to_string(cert.tag);
  if (cert.tag == CertTag::Elliptic)
    tag += "(" + render(orbit_diameter(X, pi, cert.witness)) + ")";
  else
    tag += "(" + X.label(cert.witness) + ")";
  r.add("certificate", tag);
  if (!cert.detail.empty()) r.add("detail", cert.detail);
  r.flag("minimal", cert.minimal());
  for (const auto& [i, cls] : cert.invariant_subspaces) {
    std::string s;
    for (auto c : cls) s += (s.empty() ? "" : " ") + std::to_string(c);
    r.add("invariant_classes " + std::to_string(i), s.empty() ? "none" : s);
  }
  if (delta.sign() == 0) {
    try {
      auto t = translation_length_tree(X, pi, 0);
      r.add("translation_length", render(t.value));
      r.flag("basepoint_independent", t.basepoint_independent);
    } catch (const InputError&) {
    }
  }
  r.print(out);
  return kClean;
}

Sample default_sample(const LengthTable& l, long radius) {
  const Group& G = *l.group();
  if (radius < 0) radius = l.radius() / 2;
  if (radius <= 0 && l.radius() <= 0) return l.domain_elements();
  Sample s;
  for (const auto& w : cayley_ball(G, G.generators(), radius).elements)
    if (l.contains(w)) s.push_back(w);
  return s;
}

struct LenFlags {
  bool axioms = false, complete = false, free = false;
  std::optional<long> regular;
  std::string delta;
  long sample_radius = -1;
};

int cmd_lenfun(const std::string& path, const LenFlags& f, const Common& c, std::ostream& out) {
  Report r("lenfun");
  r.input(path);
  auto l = read_len_file(path);
  const Group& G = *l.group();
  auto sample = default_sample(l, f.sample_radius);
  r.add("group", G.describe());
  r.add("entries", l.size());
  r.add("sample", sample.size());
  bool ok = true;
  const bool none = !f.axioms && !f.complete && !f.free && !f.regular && f.delta.empty();
  QLexElem delta;
  if (f.axioms || none || f.delta.empty()) {
    auto a = check_axioms(l, sample, c.scan());
    auto verdict = [&](const char* name, const Verdict& v) {
      r.add(name, v.holds ? "holds" : "fails at " + join_words(G, v.witness));
      ok = ok && v.holds;
    };
    verdict("L1", a.l1);
    verdict("L2", a.l2);
    verdict("L3", a.l3);
    r.add("skipped", a.skipped);
    r.add("min_delta", render(a.min_delta));
    if (!a.delta_at.empty()) r.add("min_delta_at", join_words(G, a.delta_at));
    delta = a.min_delta;
  }
  if (!f.delta.empty()) {
    delta = parse_qlex(f.delta, l.domain());
    auto v = lambda4_violations(l, sample, delta);
    r.add("delta", render(delta));
    r.add("lambda4_triples", v.triples);
    r.add("lambda4_violations", v.violations);
    if (v.violations) r.add("lambda4_witness", join_words(G, v.first)), ok = false;
  }
  if (f.regular) {
    auto g = check_regular(l, sample, *f.regular, delta);
    r.add("R1", g.r1.holds ? "holds" : "fails at " + join_words(G, g.r1.witness));
    r.add("R2", g.r2.holds ? "holds" : "fails at " + join_words(G, g.r2.witness));
    r.add("implication_checks", g.implication_checks);
    r.add("implication_violations", g.r1_to_r2_violations + g.r2_to_r1_violations);
    ok = ok && g.r1.holds && g.r2.holds && g.r1_to_r2_violations + g.r2_to_r1_violations == 0;
  }
  if (f.complete) {
    auto g = check_complete(l, sample, delta);
    if (!g.supported) {
      r.add("complete", "unsupported (needs Z-valued lengths)");
    } else {
      r.add("complete", g.complete.holds ? "holds" : "fails at " + join_words(G, g.complete.witness));
      r.add("decomposition_pairs", g.pairs_checked);
      r.add("decomposition_worst", g.worst);
      r.add("decomposition_bound_violations", g.bound_violations);
      ok = ok && g.complete.holds && g.bound_violations == 0;
    }
  }
  if (f.free) {
    auto g = check_free(l, sample, delta);
    r.add("free", g.free.holds ? "holds" : "fails at " + join_words(G, g.free.witness));
    r.flag("kernel_trivial", g.kernel_trivial);
    ok = ok && g.free.holds;
  }
  r.add("verdict", ok ? "ok" : "violation");
  r.print(out);
  return ok ? kClean : kViolation;
}

struct RelFlags {
  std::string group, len, N, delta, pn;
  long radius = 3, k = 1;
};

int cmd_relcayley(const RelFlags& f, std::ostream& out) {
  Report r("relcayley");
  r.input(f.len);
  auto l = read_len_file(f.len);
  std::vector<Word> gens = l.group()->generators();
  if (!f.group.empty()) {
    r.input(f.group);
    auto spec = read_grp_file(f.group);
    if (spec.group->describe() != l.group()->describe()) throw InputError("group file differs from the table's group");
    gens.clear();
    for (const auto& g : spec.gens) gens.push_back(l.group()->parse(spec.group->format(g)));
  }
  const Group& G = *l.group();
  mpq_class N = parse_rational(f.N);
  auto R = rel_cayley(l, gens, N, f.radius);
  r.add("radius", f.radius);
  r.add("N", rational_str(N));
  r.add("vertices", R.size());
  r.add("edges", R.edges.size());
  r.add("kernel_in_ball", R.kernel_size);
  r.flag("connected", R.connected);
  r.add("weight_conflicts", R.weight_conflicts);
  bool ok = R.connected && R.weight_conflicts == 0;

  auto p = check_proper(l, gens, N, f.radius);
  r.add("alpha", p.min_outside ? rational_str(*p.min_outside) : "none");
  r.add("n_prime", p.n_prime);
  r.flag("bounded", p.bounded);
  auto q = check_qi_bounds(R, l);
  r.add("qi_pairs", q.pairs);
  r.add("qi_upper_violations", q.upper_violations);
  r.add("qi_lower_violations", q.lower_violations);
  ok = ok && q.upper_violations == 0 && q.lower_violations == 0;

  mpq_class delta = f.delta.empty() ? scalar_of(check_axioms(l, default_sample(l, -1)).min_delta) : parse_rational(f.delta);
  auto g = verify_relhyp_geodesics(R, l, f.k, delta);
  r.add("k", f.k);
  r.add("delta", rational_str(delta));
  r.add("geodesics_2", g.two_edge);
  r.add("geodesics_3", g.three_edge);
  r.add("violations_i", g.violations_i);
  r.add("violations_ii", g.violations_ii);
  if (!g.witness_i.empty()) r.add("witness_i", join_words(G, g.witness_i));
  if (!g.witness_ii.empty()) r.add("witness_ii", join_words(G, g.witness_ii));
  r.add("short_pairs_without_chord", g.short_pairs_without_chord);
  ok = ok && g.violations_i == 0 && g.violations_ii == 0 && g.short_pairs_without_chord == 0;

  if (!f.pn.empty()) {
    mpq_class n = parse_rational(f.pn);
    auto pn = check_Pn(l, gens, n, f.radius, delta);
    r.add("pn_n", rational_str(n));
    r.add("pn_alpha", pn.alpha ? rational_str(*pn.alpha) : "none");
    r.flag("pn_generates", pn.generates);
    r.add("pn_ball", pn.bn_size);
    r.add("pn_double_cosets", pn.double_cosets);
    auto [lo, hi] = pn.threshold.bracket();
    r.add("pn_threshold", "6144*log2(154) + " + rational_str(pn.threshold.b));
    r.add("pn_threshold_bracket", rational_str(lo) + " " + rational_str(hi));
    auto L = pn_L(delta);
    auto [llo, lhi] = L.bracket();
    r.add("pn_L", "1536*log2(154) + " + rational_str(L.b));
    r.add("pn_L_bracket", rational_str(llo) + " " + rational_str(lhi));
    r.add("pn_above_threshold", pn.above_threshold ? (*pn.above_threshold ? "yes" : "no") : "undecided");
  }
  r.add("verdict", ok ? "ok" : "violation");
  r.print(out);
  return ok ? kClean : kViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lhyp: hyperbolic Λ-metric spaces and length functions"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "worker threads for scans (0: LHYP_THREADS or all cores)");
  app.add_flag("--timing", common.timing, "append wall time to the report");

  std::string path;
  auto* check = app.add_subcommand("check", "validate a space and report its δ constants");
  check->add_option("file", path, ".lms or .gg file")->required();
  auto* delta = app.add_subcommand("delta", "δ constants only");
  delta->add_option("file", path, ".lms or .gg file")->required();

  std::string method = "gamma1", delta_s, cg_out;
  std::optional<unsigned long> seed;
  auto* complete = app.add_subcommand("complete", "geodesic Z-completion");
  complete->add_option("file", path, ".lms or .gg file")->required();
  complete->add_option("--method", method)->check(CLI::IsMember({"gamma1", "gamma2"}));
  complete->add_option("--delta", delta_s, "defaults to the 4-point constant");
  complete->add_option("--seed", seed, "process pairs in a shuffled order");
  complete->add_option("-o,--out", cg_out, ".cg output file");

  std::string perm;
  long K = 2;
  auto* classify = app.add_subcommand("classify", "isometry certificate");
  classify->add_option("--space", path)->required();
  classify->add_option("--perm", perm)->required();
  classify->add_option("--delta", delta_s);
  classify->add_option("--K", K);

  LenFlags lf;
  auto* lenfun = app.add_subcommand("lenfun", "length function checks");
  lenfun->add_option("file", path, ".len file")->required();
  lenfun->add_flag("--axioms", lf.axioms);
  lenfun->add_option("--delta", lf.delta);
  lenfun->add_option("--regular", lf.regular, "check (R1,k)/(R2,k)");
  lenfun->add_flag("--complete", lf.complete);
  lenfun->add_flag("--free", lf.free);
  lenfun->add_option("--sample-radius", lf.sample_radius);

  RelFlags rf;
  auto* rel = app.add_subcommand("relcayley", "weighted coset graph and relative checks");
  rel->add_option("--group", rf.group);
  rel->add_option("--len", rf.len)->required();
  rel->add_option("--N", rf.N)->required();
  rel->add_option("--radius", rf.radius);
  rel->add_option("--pn", rf.pn);
  rel->add_option("--k", rf.k);
  rel->add_option("--delta", rf.delta);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kClean;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kClean;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  auto start = std::chrono::steady_clock::now();
  int code = kInputError;
  try {
    if (*check) code = cmd_check(path, common, out);
    else if (*delta) code = cmd_delta(path, common, out);
    else if (*complete) code = cmd_complete(path, method, delta_s, seed, cg_out, out);
    else if (*classify) code = cmd_classify(path, perm, delta_s, K, out);
    else if (*lenfun) code = cmd_lenfun(path, lf, common, out);
    else if (*rel) code = cmd_relcayley(rf, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ConstructionFailure& e) {
    out << "verdict: construction failed\n";
    err << "error: " << e.what() << "\n";
    return kViolation;
  }
  if (common.timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    out << "wall_ms: " << ms << "\n";
  }
  return code;
}

}  // namespace lhyp
