#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lhyp/commands.hpp"
#include "lhyp/io.hpp"

using namespace lhyp;

namespace {
const std::string data = LHYP_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
};
Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "lhyp");
  std::ostringstream o, e;
  int c = run_cli(args, o, e);
  return {c, o.str(), e.str()};
}
std::string d(const std::string& f) { return data + "/" + f; }
bool has(const std::string& s, const std::string& line) { return s.find(line + "\n") != std::string::npos; }
}  // namespace

TEST_CASE("check exit codes") {
  auto ok = run({"check", d("tree.lms")});
  CHECK(ok.code == 0);
  CHECK(has(ok.out, "delta_4pt: 0"));
  auto bad = run({"check", d("bad_triangle.lms")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("violation: LM4") != std::string::npos);
  CHECK(run({"check", d("malformed.lms")}).code == 2);
  CHECK(run({"check", d("missing.lms")}).code == 2);
  CHECK(run({"check", "--bogus", d("tree.lms")}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("complete") {
  auto id = run({"complete", "--method", "gamma1", d("c6.gg")});
  CHECK(id.code == 0);
  CHECK(has(id.out, "certificate: identity"));
  auto hex = run({"complete", "--method", "gamma1", "--delta", "1", d("hexagon3.lms")});
  CHECK(hex.code == 0);
  CHECK(has(hex.out, "vertices: 6"));
  auto rs = run({"complete", "--method", "gamma2", "--delta", "1", d("far3.lms")});
  CHECK(rs.code == 1);
  CHECK(has(rs.out, "verdict: RS fails"));
  CHECK(run({"complete", "--method", "gamma3", d("c6.gg")}).code == 2);
  // below the hyperbolicity constant of C6
  CHECK(run({"complete", "--delta", "0", d("c6.gg")}).code == 2);
}

TEST_CASE("completion output is deterministic and order-free") {
  auto a = run({"complete", "--method", "gamma2", "--delta", "1", d("hexagon3.lms")});
  auto b = run({"complete", "--method", "gamma2", "--delta", "1", d("hexagon3.lms")});
  auto c = run({"complete", "--method", "gamma2", "--delta", "1", "--seed", "17", d("hexagon3.lms")});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  auto tmp = (std::filesystem::temp_directory_path() / "lhyp_test.cg").string();
  auto w = run({"complete", "-o", tmp, d("hexagon3.lms")});
  CHECK(w.code == 0);
  auto text = read_file(tmp);
  CHECK(text.rfind("vertices ", 0) == 0);
  CHECK(text.find("certificate\n") != std::string::npos);
}

TEST_CASE("classify and lenfun") {
  auto e = run({"classify", "--space", d("tree.lms"), "--perm", d("id.perm")});
  CHECK(e.code == 0);
  CHECK(has(e.out, "certificate: Elliptic(0)"));
  auto inv = run({"classify", "--space", d("lex2.lms"), "--perm", d("swap.perm"), "--delta", "(0,0)"});
  CHECK(inv.code == 0);
  CHECK(inv.out.find("certificate: Inversion") != std::string::npos);
  CHECK(run({"classify", "--space", d("tree.lms"), "--perm", d("rot.perm")}).code == 2);
  auto ax = run({"lenfun", "--axioms", d("f2_r4.len")});
  CHECK(ax.code == 0);
  CHECK(has(ax.out, "min_delta: 0"));
  auto all = run({"lenfun", "--regular", "1", "--complete", "--free", "--delta", "0", d("f2_r4.len")});
  CHECK(all.code == 0);
  CHECK(has(all.out, "lambda4_violations: 0"));
  CHECK(run({"lenfun", "--regular", "x", d("f2_r4.len")}).code == 2);
}

TEST_CASE("relcayley") {
  auto r = run({"relcayley", "--group", d("f2.grp"), "--len", d("f2_r4.len"), "--N", "1", "--radius", "3", "--pn", "1"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "pn_double_cosets: 5"));
  CHECK(has(r.out, "violations_i: 0"));
  auto z = run({"relcayley", "--len", d("z_r8.len"), "--N", "2", "--radius", "5"});
  CHECK(z.code == 0);
  CHECK(has(z.out, "vertices: 11"));
  CHECK(run({"relcayley", "--len", d("z_r8.len")}).code == 2);
}

TEST_CASE("file formats") {
  auto X = read_lms_file(d("tree.lms"));
  std::ostringstream o;
  write_lms(o, X);
  std::istringstream i(o.str());
  auto Y = read_lms(i);
  CHECK(Y.size() == 4);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) CHECK(X.d(a, b) == Y.d(a, b));
  CHECK(Y.label(2) == "c");

  std::istringstream short_matrix("lambda Z^1\npoints 2 a b\n0 1\n1\n");
  CHECK_THROWS_AS(read_lms(short_matrix), InputError);
  std::istringstream rank_mismatch("lambda Z^2\npoints 1 a\n0\n");
  CHECK_THROWS_AS(read_lms(rank_mismatch), InputError);

  auto G = read_gg_file(d("c6.gg"));
  CHECK(G.size() == 6);
  CHECK(G.edges().size() == 6);
  std::istringstream self_loop("graph 2\n0 0\n");
  CHECK_THROWS_AS(read_gg(self_loop), InputError);

  std::istringstream p("2 0 1 # comment\n");
  CHECK(read_perm(p) == Perm{2, 0, 1});
  std::istringstream p2("0 1\n1 0\n");
  CHECK_THROWS_AS(read_perm(p2), InputError);

  std::istringstream fin("finite 2\n0 1\n1 0\n");
  auto spec = read_grp(fin, "");
  CHECK(spec.group->describe() == "finite 2");
  CHECK(spec.gens.size() == 1);
  std::istringstream prod("product f2.grp z.grp\n");
  auto ps = read_grp(prod, data);
  CHECK(ps.gens.size() == 3);
  std::istringstream unknown("monoid 3\n");
  CHECK_THROWS_AS(read_grp(unknown, ""), InputError);

  auto l = read_len_file(d("z_r8.len"));
  CHECK(l.size() == 17);
  CHECK(l.radius() == 8);
  CHECK(digest("") == "cbf29ce484222325");
}
