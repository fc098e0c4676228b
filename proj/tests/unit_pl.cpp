#include "skelcalc/gen.hpp"

#include <doctest.h>

using namespace skc;

namespace {

// a --e0 (length 2)--> b, open germ g at b.
Complex segment() {
  ComplexSpec s;
  Vertex a, b;
  a.id = "a";
  b.id = "b";
  a.in_S = b.in_S = true;
  s.vertices = {a, b};
  s.edges.push_back({"e0", "a", "b", Q(2), 1, EdgeKind::Skeleton});
  s.germs.push_back({"g", "b", 1, GermKind::OpenBoundary});
  return build_complex(s);
}

PLFunction tent(const Complex& X) {
  PLFunction F = constant_fn(X, Q(-2));
  F.edge[0].pts = {{Q(0), Q(-2)}, {Q(1), Q(-1)}, {Q(2), Q(-2)}};
  F.germ[0] = Q(-1, 2);
  return F;
}

}  // namespace

TEST_CASE("rationals print reduced and parse back") {
  CHECK(qstr(Q(6, 4)) == "3/2");
  CHECK(qstr(Q(-4, 2)) == "-2");
  CHECK(parse_q("-3/9") == Q(-1, 3));
  CHECK_THROWS_AS(parse_q("0.5"), Error);
  CHECK_THROWS_AS(parse_q("1/0"), Error);
}

TEST_CASE("evaluation, slopes and the laplacian of a tent") {
  Complex X = segment();
  PLFunction F = tent(X);
  validate_fn(X, F);
  CHECK(eval(F, 0, Q(1, 2)) == Q(-3, 2));
  CHECK(slope_along(X, F, {false, 0, true}) == 1);
  CHECK(slope_along(X, F, {false, 0, false}) == 1);
  CHECK(slope_at_infinity(F, 0) == Q(1, 2));
  CHECK(laplacian(X, F, X.vertex_index("a")) == 1);
  CHECK(laplacian(X, F, X.vertex_index("b")) == Q(1, 2));
  auto bp = breakpoints(X, F);
  REQUIRE(bp.size() == 1);
  CHECK(bp[0].pos == 1);
}

TEST_CASE("sum and scaling act pointwise") {
  Complex X = segment();
  PLFunction F = tent(X);
  PLFunction G = affine_on_edges(X, {Q(0), Q(-2)});
  PLFunction S = add(X, F, G);
  CHECK(eval(S, 0, Q(1)) == Q(-2));
  CHECK(laplacian(X, S, 0) == laplacian(X, F, 0) + laplacian(X, G, 0));
  CHECK(eval(scale(F, Q(3)), 0, Q(1)) == Q(-3));
}

TEST_CASE("collinear points are dropped") {
  Complex X = segment();
  PLFunction F = affine_on_edges(X, {Q(0), Q(-2)});
  F.edge[0].pts.insert(F.edge[0].pts.begin() + 1, {Q(1), Q(-1)});
  CHECK(canonical(F).edge[0].pts.size() == 2);
}

TEST_CASE("broken functions are refused") {
  Complex X = segment();
  PLFunction F = tent(X);
  F.edge[0].pts[2].second = Q(5);
  CHECK_THROWS_AS(validate_fn(X, F), Error);
}

TEST_CASE("refinement cuts at breaks and keeps the values") {
  Complex X = segment();
  PLFunction F = tent(X);
  Refined R = refine(X, {F});
  CHECK(R.X.nv() == 3);
  CHECK(R.X.vertex_index("e0@1") >= 0);
  CHECK(R.X.edge_index("e0@1") >= 0);
  for (auto& e : R.fns[0].edge) CHECK(e.pts.size() == 2);
  CHECK(R.fns[0].vval[R.X.vertex_index("e0@1")] == -1);
  CHECK(transport(X, F, R.X) == R.fns[0]);
}

TEST_CASE("shape of a slope sequence") {
  auto s = shape_of({Q(2), Q(1), Q(0)});
  CHECK(s.concave);
  CHECK(!s.nonincreasing);
  s = shape_of({Q(-1), Q(1)});
  CHECK(!s.concave);
  s = shape_of({Q(0), Q(-1, 2)});
  CHECK(s.concave);
  CHECK(s.nonincreasing);
}

TEST_CASE("slope lattice for a given rank") {
  CHECK(quantization_of({Q(1, 2), Q(1), Q(-3, 2)}, 2).ok);
  auto q = quantization_of({Q(1, 3)}, 2);
  CHECK(!q.ok);
  REQUIRE(q.offending.size() == 1);
  CHECK(q.offending[0] == Q(1, 3));
  CHECK(quantization_of({Q(1, 3), Q(1, 2)}, 3).ok);
}

TEST_CASE("paths report their slopes in order") {
  Complex X = segment();
  PLFunction F = tent(X);
  Path p{{0, true}};
  CHECK(slopes_along_path(X, F, p) == std::vector<Q>{Q(1), Q(-1)});
  CHECK(!is_log_affine(X, F, p));
  CHECK(shape_checks(X, F, p).concave);
  CHECK_THROWS_AS(check_path(X, {{0, true}, {0, true}}), Error);
}
