#include <doctest.h>

#include <random>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "wreathlab/cli.hpp"
#include "wreathlab/error.hpp"
#include "wreathlab/io.hpp"
#include "wreathlab/noether.hpp"

using namespace wreathlab;

namespace {

  std::string const data = WREATHLAB_DATA_DIR;

  struct Run {
    int            code;
    nlohmann::json report;
    std::string    err;
  };

  Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int const          code = run_command(args, out, err);
    nlohmann::json     j;
    if (!out.str().empty() && out.str().front() == '{') j = nlohmann::json::parse(out.str());
    return {code, j, err.str()};
  }

}  // namespace

TEST_CASE("semigroup files") {
  auto const s = parse_semigroup(read_file(data + "/semigroups/semilattice.sg"));
  CHECK(s == examples::semilattice());
  CHECK_THROWS_AS(parse_semigroup(read_file(data + "/semigroups/missing_zero.sg")), ParseError);
  auto const m = parse_semigroup(read_file(data + "/semigroups/monogenic4.sg"));
  CHECK(*nilpotency_index(m).index == 4);
  CHECK_THROWS_AS(parse_semigroup("semigroup x\nelements 0 a\nzero 0\ntable\n0 0\n0 b\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_semigroup("semigroup x\nelements 0 a b\nzero 0\ntable\n0 0 0\n0 b a\n0 b a\n"),
                  StructuralError);
  for (auto const& a : oracle::corpus()) {
    if (a->has_unit()) continue;
    CHECK(parse_semigroup(emit_semigroup(*a)) == *a);
  }
}

TEST_CASE("system files") {
  auto const sys = parse_system("vars x1 .. x6\neq x1 x3 = x4 x6\n");
  CHECK(sys.equations == std::vector<Equation>{{{0, 2}, {3, 5}}});
  auto const sch = parse_system("vars x1 .. x6\nschema i>=0 : x1 x2^i x3 = x4 x5^i x6\n");
  REQUIRE(sch.schemas.size() == 1);
  CHECK(sch.schemas[0] == theoremA_schema());
  CHECK_THROWS_AS(parse_system("vars x1 x2\neq x1 = \n"), ParseError);
  CHECK_THROWS_AS(parse_system("vars x1 x2\neq x1 = x7\n"), ParseError);
  CHECK_THROWS_AS(parse_system("vars x1 x2\neq x1 = x2\neq x1 = x2\n"), ParseError);
  CHECK_THROWS_AS(parse_system("vars x1 x2\nschema i>=1 : x1 = x2^i\n"), UnsupportedError);
  try {
    parse_system("vars x1 x2\n\neq x1 x9 = x2\n");
    FAIL("no error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
  auto const pow = parse_system("vars x1 x2\neq x1^3 = x2^2 x1\n");
  CHECK(pow.equations[0] == Equation{{0, 0, 0}, {1, 1, 0}});
  auto const file = parse_system(read_file(data + "/systems/witness_without_1.sys"));
  CHECK(file.equations.size() == 1);
  CHECK(file.schemas[0].first == 2);
}

TEST_CASE("system round trip") {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 200; ++k) {
    System sys;
    std::size_t const n = 1 + k % 4;
    for (std::size_t i = 0; i < n; ++i) sys.vars.push_back("x" + std::to_string(i + 1));
    for (int j = 0; j < 1 + k % 3; ++j) {
      Equation e{oracle::random_word(rng, n, 5), oracle::random_word(rng, n, 5)};
      if (std::find(sys.equations.begin(), sys.equations.end(), e) == sys.equations.end())
        sys.equations.push_back(e);
    }
    if (k % 2) {
      auto sc  = theoremA_schema();
      sc.first = k % 5;
      if (n == 4) sc.lhs[1].exponent = {1, 2};
      if (n >= 3) {
        sys.vars.resize(6);
        for (std::size_t i = n; i < 6; ++i) sys.vars[i] = "x" + std::to_string(i + 1);
        sys.schemas.push_back(sc);
      }
    }
    auto const text = emit_system(sys);
    auto const back = parse_system(text);
    CHECK(back == sys);
    CHECK(emit_system(back) == text);
  }
}

TEST_CASE("terms, equations and points") {
  std::vector<std::string> const v{"x1", "x2", "x3"};
  CHECK(parse_term("0", v) == AddTerm::zero(3));
  CHECK(parse_term("2x1+x3", v) == AddTerm(std::vector<std::int64_t>{2, 0, 1}));
  CHECK(parse_terms("0, x1\nx2", v).size() == 3);
  CHECK(parse_equation("eq x1 x2 = x3", v) == Equation{{0, 1}, {2}});
  CHECK(parse_equation("x1 = x3", v) == Equation{{0}, {2}});

  auto const sl = oracle::share(examples::semilattice());
  auto const p  = parse_point("x1: b=1; default=0; 1:e 2:e\nx2: b=3; default=e\nx3: b=2; default=0\n", sl, v);
  CHECK(p.b_part == std::vector<Coord>{1, 3, 2});
  CHECK(p.a_part[0] == FinSuppVector(sl, 1, 0, {{1, 1}, {2, 1}}));
  CHECK(p.a_part[1] == FinSuppVector::constant(sl, 1, 1));

  std::mt19937_64 rng(62);
  auto const      as = oracle::corpus();
  for (int k = 0; k < 200; ++k) {
    auto const& a  = as[k % as.size()];
    auto const  pt = oracle::random_point(rng, a, 3, 5, 4, k % 2);
    auto const  text = emit_point(pt, v);
    CHECK(parse_point(text, a, v) == pt);
    CHECK(emit_point(parse_point(text, a, v), v) == text);
  }
}

TEST_CASE("command line") {
  auto const sg  = data + "/semigroups/";
  auto const sys = data + "/systems/";

  auto r = run({"nilpotency", "--semigroup", sg + "semilattice.sg"});
  CHECK(r.code == exit_ok);
  CHECK(r.report["result"] == nlohmann::json{{"nilpotent", false}, {"witness_length", 6}});
  for (auto const* key : {"command", "inputs", "result", "certificates", "timing_ms"})
    CHECK(r.report.contains(key));

  r = run({"noether-witness", "--n", "3", "--semigroup", sg + "semilattice.sg"});
  CHECK(r.code == exit_ok);
  CHECK(r.report["result"]["verified"] == true);

  r = run({"verify", "--semigroup", sg + "semilattice.sg", "--system", sys + "witness.sys",
           "--equation", sys + "instance0.eq", "--bounds", "3,3", "--instances", "4"});
  CHECK(r.code == exit_ok);
  CHECK(r.report["result"]["status"] == "holds-in-box");

  r = run({"verify", "--semigroup", sg + "semilattice.sg", "--system", sys + "witness.sys",
           "--equation", sys + "instance0.eq", "--bounds", "3,3"});
  CHECK(r.code == exit_input_error);
  CHECK_FALSE(r.err.empty());

  r = run({"check-semigroup", "--semigroup", sg + "missing_zero.sg"});
  CHECK(r.code == exit_input_error);
  CHECK(r.report["result"]["error"]["kind"] == "input");

  r = run({"star", "--semigroup", sg + "semilattice.sg", "--system", sys + "witness.sys", "--eq",
           "x1 x3 = x4 x6"});
  CHECK(r.code == exit_ok);
  CHECK(r.report["result"]["t_less_size"] == 5);

  r = run({"transport", "--semigroup", sg + "semilattice.sg", "--system",
           sys + "witness_without_1.sys", "--equation", sys + "instance1.eq", "--bounds", "3,2"});
  CHECK(r.code == exit_refuted);
  CHECK(r.report["result"]["status"] == "counterexample");

  r = run({"discriminate", "--system", sys + "empty2.sys", "--terms", sys + "worked.terms"});
  CHECK(r.code == exit_ok);
  CHECK(r.report["result"]["Q"] == nlohmann::json{1, 2});

  r = run({"nilpotency"});
  CHECK(r.code == exit_input_error);
  r = run({"no-such-command"});
  CHECK(r.code == exit_input_error);
  r = run({"verify", "--semigroup", sg + "semilattice.sg", "--system", sys + "empty2.sys", "--eq",
           "x1 = x2", "--bounds", "2"});
  CHECK(r.code == exit_input_error);
}

TEST_CASE("reports are deterministic") {
  auto const sg  = data + "/semigroups/semilattice.sg";
  auto const sys = data + "/systems/";
  std::vector<std::string> const args{"transport", "--semigroup", sg, "--system",
                                      sys + "witness_without_1.sys", "--equation",
                                      sys + "instance1.eq", "--bounds", "3,2"};
  auto a = run(args).report, b = run(args).report;
  a.erase("timing_ms");
  b.erase("timing_ms");
  CHECK(a == b);
}
