#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "xsq/builtins.hpp"
#include "xsq/structure_file.hpp"

using namespace xsq;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/xsq_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
  void write(const std::string& text) {
    std::ofstream f(path);
    f << text;
  }
  std::string read() const {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
};

bool groups_equal(const GroupPtr& a, const GroupPtr& b) {
  return a->n == b->n && a->table == b->table;
}

}  // namespace

TEST_CASE("every demo parses back to the same structure") {
  for (const std::string& name : demo_names()) {
    StructureFile s = demo_structure(name);
    const std::string text = serialize_structure(s);
    StructureFile back = parse_structure(text);
    CHECK(back.kind == s.kind);
    CHECK(serialize_structure(back) == text);
    CHECK(check_structure(back).ok());
  }
}

TEST_CASE("demo files pass cmd_check") {
  for (const std::string& name : demo_names()) {
    TempFile f(name + ".json");
    std::ostringstream log;
    CHECK(cmd_demo(name, f.path, log) == 0);
    CHECK(cmd_check(f.path, log, {}) == 0);
  }
}

TEST_CASE("unknown demo lists the available names") {
  std::ostringstream log;
  CHECK(cmd_demo("unknown", "/tmp/xsq_test_unknown.json", log) == 2);
  CHECK(log.str().find("square-a3-s3") != std::string::npos);
}

TEST_CASE("tampered h entry fails cmd_check with axiom (iv)") {
  TempFile f("tamper.json");
  std::ostringstream log;
  REQUIRE(cmd_demo("square-a3-s3", f.path, log) == 0);
  // change one h entry to a nonidentity element of L
  std::string text = f.read();
  auto pos = text.find("\"h\": [");
  REQUIRE(pos != std::string::npos);
  pos = text.find('0', pos);
  REQUIRE(pos != std::string::npos);
  text[pos] = '1';
  f.write(text);
  std::ostringstream out;
  CHECK(cmd_check(f.path, out, {}) == 1);
  CHECK(out.str().find("(iv)") != std::string::npos);
}

TEST_CASE("empty and malformed files exit 2") {
  TempFile f("empty.json");
  f.write("");
  std::ostringstream log;
  CHECK(cmd_check(f.path, log, {}) == 2);
  f.write("{\"groups\": {\"G\": {\"table\": [[0,1],[1,1]]}}}");
  CHECK(cmd_check(f.path, log, {}) == 2);  // no inverse -> validation error
  CHECK(cmd_check("/tmp/xsq_no_such_file.json", log, {}) == 2);
}

TEST_CASE("conversions write files that re-pass their checkers") {
  TempFile in("conv_in.json");
  std::ostringstream log;
  REQUIRE(cmd_demo("square-a3-s3", in.path, log) == 0);

  {
    TempFile out("conv_2cm.json");
    CHECK(cmd_convert(in.path, "two_crossed", out.path, log, {}) == 0);
    StructureFile s = load_structure(out.path);
    CHECK(s.kind == "two_crossed");
    CHECK(std::get<TwoCrossedModule>(s.value).M->n == 9);
    CHECK(cmd_check(out.path, log, {}) == 0);
  }
  {
    TempFile out("conv_cat2.json");
    CHECK(cmd_convert(in.path, "cat2", out.path, log, {}) == 0);
    StructureFile s = load_structure(out.path);
    CHECK(std::get<Cat2Group>(s.value).G->n == 162);
    CHECK(cmd_check(out.path, log, {}) == 0);
  }
  {
    TempFile out("conv_quad.json");
    CHECK(cmd_convert(in.path, "quadratic", out.path, log, {}) == 0);
    CHECK(cmd_check(out.path, log, {}) == 0);
  }

  // crossed module <-> cat1 both ways
  TempFile xin("conv_xmod.json");
  REQUIRE(cmd_demo("xmod-a3-s3", xin.path, log) == 0);
  TempFile c1out("conv_cat1.json");
  CHECK(cmd_convert(xin.path, "cat1", c1out.path, log, {}) == 0);
  CHECK(cmd_check(c1out.path, log, {}) == 0);
  TempFile xback("conv_xmod_back.json");
  CHECK(cmd_convert(c1out.path, "crossed_module", xback.path, log, {}) == 0);
  CHECK(cmd_check(xback.path, log, {}) == 0);
  {
    StructureFile orig = load_structure(xin.path);
    StructureFile back = load_structure(xback.path);
    CHECK(is_isomorphic(std::get<CrossedModule>(orig.value).M(),
                        std::get<CrossedModule>(back.value).M()));
  }

  // simplicial -> quadratic through the nerve demo
  TempFile nin("conv_nerve.json");
  REQUIRE(cmd_demo("nerve-a3-s3-depth3", nin.path, log) == 0);
  TempFile qout("conv_nerve_quad.json");
  CHECK(cmd_convert(nin.path, "quadratic", qout.path, log, {}) == 0);
  CHECK(cmd_check(qout.path, log, {}) == 0);

  // declared non-goal: no way back to simplicial groups
  std::ostringstream err;
  TempFile tin("conv_2cm_in.json");
  REQUIRE(cmd_convert(in.path, "two_crossed", tin.path, log, {}) == 0);
  CHECK(cmd_convert(tin.path, "simplicial", "/tmp/xsq_never.json", err, {}) == 2);
  CHECK(err.str().find("no conversion") != std::string::npos);
}

TEST_CASE("cmd_homotopy prints the expected signatures") {
  std::ostringstream log;
  {
    TempFile f("h1.json");
    REQUIRE(cmd_demo("square-a3-s3", f.path, log) == 0);
    std::ostringstream out;
    CHECK(cmd_homotopy(f.path, out, {}) == 0);
    CHECK(out.str().find("pi1 = C2; pi2 = 1; pi3 = 1") != std::string::npos);
  }
  {
    TempFile f("h2.json");
    REQUIRE(cmd_demo("square-c4-c2", f.path, log) == 0);
    std::ostringstream out;
    CHECK(cmd_homotopy(f.path, out, {}) == 0);
    CHECK(out.str().find("pi1 = 1; pi2 = C2; pi3 = 1") != std::string::npos);
  }
  {
    TempFile f("h3.json");
    REQUIRE(cmd_demo("trivial-c2", f.path, log) == 0);
    std::ostringstream out;
    CHECK(cmd_homotopy(f.path, out, {}) == 0);
    CHECK(out.str().find("pi1 = C2; pi2 = 1; pi3 = 1") != std::string::npos);
  }
  {
    TempFile f("h4.json");
    REQUIRE(cmd_demo("nerve-a3-s3-depth3", f.path, log) == 0);
    std::ostringstream out;
    CHECK(cmd_homotopy(f.path, out, {}) == 0);
    CHECK(out.str().find("pi1 = C2") != std::string::npos);
  }
}

TEST_CASE("cmd_diagram commutes on the small squares") {
  std::ostringstream log;
  for (const std::string name : {"trivial-c2", "square-c4-c2", "square-klein-diagonal"}) {
    TempFile f(std::string("diag_") + name + ".json");
    REQUIRE(cmd_demo(name, f.path, log) == 0);
    std::ostringstream out;
    CHECK(cmd_diagram(f.path, out, {}) == 0);
    CHECK(out.str().find("diagram commutes") != std::string::npos);
  }
  // non-square input is an input error
  TempFile x("diag_xmod.json");
  REQUIRE(cmd_demo("xmod-a3-s3", x.path, log) == 0);
  std::ostringstream out;
  CHECK(cmd_diagram(x.path, out, {}) == 2);
}

TEST_CASE("bisimplicial and cat2 files round-trip through the format") {
  Cat2FromSquare k = cat2_from_crossed_square(demo_square_klein_diagonal());
  {
    StructureFile s;
    s.kind = "cat2";
    s.value = k.cat2;
    StructureFile back = parse_structure(serialize_structure(s));
    CHECK(check_structure(back).ok());
    CHECK(groups_equal(std::get<Cat2Group>(back.value).G, k.cat2.G));
  }
  {
    StructureFile s;
    s.kind = "bisimplicial";
    s.value = binerve(k.cat2);
    const std::string text = serialize_structure(s);
    StructureFile back = parse_structure(text);
    CHECK(check_structure(back).ok());
    // homotopy through the codiagonal works on the parsed grid
    TempFile f("binerve.json");
    f.write(text);
    std::ostringstream out;
    CHECK(cmd_homotopy(f.path, out, {}) == 0);
    CHECK(out.str().find("pi1 = C2") != std::string::npos);
  }
  {
    TempFile f("cat2.json");
    StructureFile s;
    s.kind = "cat2";
    s.value = k.cat2;
    f.write(serialize_structure(s));
    std::ostringstream out;
    CHECK(cmd_homotopy(f.path, out, {}) == 0);
    CHECK(out.str().find("pi1 = C2") != std::string::npos);
  }
}

TEST_CASE("hand-written file with builtins parses") {
  const std::string text = R"({
    "groups": {
      "M": {"builtin": "cyclic", "n": 4},
      "N": {"builtin": "cyclic", "n": 2}
    },
    "homs": {"d": {"dom": "M", "cod": "N", "map": [0, 1, 0, 1]}},
    "actions": {"a": {"actor": "N", "target": "M", "table": [[0,1,2,3],[0,1,2,3]]}},
    "structure": {"kind": "crossed_module",
                  "refs": {"M": "M", "N": "N", "boundary": "d", "act": "a"}}
  })";
  StructureFile s = parse_structure(text);
  CHECK(s.kind == "crossed_module");
  CHECK(check_structure(s).ok());
  CHECK(groups_equal(std::get<CrossedModule>(s.value).M(), cyclic_group(4)));
}
