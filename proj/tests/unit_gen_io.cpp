#include "skelcalc/bounds.hpp"
#include "skelcalc/gen.hpp"
#include "skelcalc/io.hpp"
#include "skelcalc/oracle.hpp"

#include <doctest.h>

#include <json.hpp>

using namespace skc;

namespace {

bool no_fail(const std::vector<Row>& rows) {
  for (auto& r : rows)
    if (r.status == Status::Fail) return false;
  return true;
}

ErrorKind kind_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("parsed: " << text);
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("fixture files match the built-in fixtures") {
  for (auto& name : fixture_names()) {
    Instance I = read_instance(std::string(SKC_FIXTURES) + "/" + name + ".inst");
    CHECK(serialize(I) == serialize(fixture(name)));
  }
}

TEST_CASE("parse and serialize are inverse on fixtures and generated instances") {
  std::vector<Instance> all;
  for (auto& name : fixture_names()) all.push_back(fixture(name));
  for (std::uint64_t s = 1; s <= 10; ++s) {
    GenParams p;
    p.seed = s;
    p.open_germs = static_cast<int>(s % 3);
    all.push_back(generate(p));
  }
  for (auto& name : adversarial_names()) all.push_back(adversarial(name));
  for (auto& I : all) {
    std::string t = serialize(I);
    Instance J = parse_instance(t);
    CHECK(serialize(J) == t);
    CHECK(J.label == I.label);
    CHECK(J.flags == I.flags);
    CHECK(euler_data(J.X) == euler_data(I.X));
  }
}

TEST_CASE("malformed instances") {
  CHECK(kind_of("[skeleton]\nvertex=a genus=x\n") == ErrorKind::ParseError);
  CHECK(kind_of("[skeleton]\nvertex=a\nedge=e from=a to=b\n") == ErrorKind::UnknownVertex);
  CHECK(kind_of("[nonsense]\n") == ErrorKind::ParseError);
  CHECK(kind_of("[skeleton]\nvertex=a S=1\n[profiles]\nrank=1\nR1.a=1\n") == ErrorKind::ValidationError);
}

TEST_CASE("structured report is valid json with one entry per row") {
  auto rows = bound_report(analyze(fixture("theta")));
  auto j = nlohmann::json::parse(report_json(rows));
  CHECK(j["rows"].size() == rows.size());
}

TEST_CASE("dot export names every vertex") {
  Instance I = fixture("path3");
  std::string d = to_dot(I.X);
  for (auto& v : I.X.vertices) CHECK(d.find("\"" + v.id + "\"") != std::string::npos);
}

TEST_CASE("generator is a function of its parameters") {
  for (auto shape : {"general", "disk", "annulus"}) {
    GenParams p;
    p.shape = shape;
    p.seed = 11;
    CHECK(serialize(generate(p)) == serialize(generate(p)));
    GenParams q = p;
    q.seed = 12;
    CHECK(serialize(generate(p)) != serialize(generate(q)));
  }
}

TEST_CASE("generated instances are admissible") {
  for (std::uint64_t s = 1; s <= 40; ++s) {
    GenParams p;
    p.seed = s;
    p.rank = 1 + static_cast<int>(s % 3);
    p.shape = s % 3 == 0 ? "general" : (s % 3 == 1 ? "disk" : "annulus");
    Instance I = generate(p);
    CHECK_NOTHROW(validate_profile(I.X, I.P));
    Analysis A = analyze(I);
    CHECK_MESSAGE(no_fail(bound_report(A)), "seed " << s);
    CHECK_MESSAGE(no_fail(verify_report(A)), "seed " << s);
  }
}

TEST_CASE("parameter files") {
  GenParams p = parse_params("# comment\nseed=9\nrank=3\nshape=annulus\nconcavity=0\n");
  CHECK(p.seed == 9);
  CHECK(p.rank == 3);
  CHECK(p.shape == "annulus");
  CHECK(!p.concavity);
  CHECK(parse_params(params_text(p)).rank == 3);
  CHECK_THROWS_AS(parse_params("colour=blue\n"), Error);
}

TEST_CASE("impossible requests are reported") {
  GenParams p;
  p.rank = 0;
  CHECK_THROWS_AS(generate(p), Error);
}

TEST_CASE("order statistic takes the pointwise k-th smallest, counted from 0") {
  Instance I = fixture("circle");
  PLFunction a = constant_fn(I.X, Q(-1)), b = constant_fn(I.X, Q(-3));
  CHECK(order_statistic(I.X, {a, b}, 0).vval[0] == -3);
  CHECK(order_statistic(I.X, {a, b}, 1).vval[0] == -1);
}

TEST_CASE("oracle agrees on fixtures and catches a corrupted count") {
  for (auto& name : fixture_names()) CHECK(oracle_verify(fixture(name)).empty());
  Instance I = fixture("theta");
  Analysis A = analyze(I);
  A.lin_counts[1].v_w += 1;
  CHECK(!diff_facts(pipeline_facts(A), oracle_facts(I)).empty());
}
