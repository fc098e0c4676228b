#include "skelcalc/gen.hpp"

#include <doctest.h>

#include <map>

using namespace skc;

namespace {

AGraph star(int leaves) {
  AGraph T;
  T.vdeg.assign(leaves + 1, 1);
  T.vmap.assign(leaves + 1, -1);
  for (int k = 1; k <= leaves; ++k) T.edges.push_back({0, k, 1});
  return T;
}

ComplexSpec lollipop() {
  ComplexSpec s;
  Vertex a;
  a.id = "a";
  a.in_S = true;
  Vertex t;
  t.id = "t";
  t.depth = 1;
  s.vertices = {a, t};
  s.edges.push_back({"loop", "a", "a", Q(2), 1, EdgeKind::Skeleton});
  s.edges.push_back({"stick", "a", "t", Q(1), 1, EdgeKind::Tree});
  return s;
}

}  // namespace

TEST_CASE("unlabeled free trees per vertex count") {
  auto trees = enumerate_marked_trees(8);
  std::map<int, int> per;
  for (auto& T : trees) ++per[T.nv()];
  std::vector<int> want{1, 1, 1, 2, 3, 6, 11, 23};
  for (int n = 1; n <= 8; ++n) CHECK(per[n] == want[n - 1]);
  CHECK_THROWS_AS(enumerate_marked_trees(11), Error);
}

TEST_CASE("every marked tree: one more vertex than edges, ends bound the vertices") {
  for (auto& T : enumerate_marked_trees(8)) {
    if (T.nv() < 2) continue;
    auto c = tree_identity_check(T);
    CHECK(c.e_plus_1_eq_v);
    CHECK(c.bound_holds);
    CHECK(c.v <= 2 * c.v1 + c.v2 - 2);
  }
}

TEST_CASE("equality in the end-point bound needs arity at most three") {
  CHECK(tree_identity_check(star(2)).equality);
  CHECK(tree_identity_check(star(3)).equality);
  for (int k = 4; k <= 7; ++k) {
    auto c = tree_identity_check(star(k));
    CHECK(!c.equality);
    CHECK(c.v1 == k);
    CHECK(c.v == 2 * c.v1 + c.v2 - 2 - (k - 3));
  }
  AGraph one;
  one.vdeg = {1};
  one.vmap = {-1};
  CHECK_THROWS_AS(tree_identity_check(one), Error);
}

TEST_CASE("euler data of the small fixtures") {
  CHECK(euler_data(fixture("circle").X) == EulerData{0, 1, 0, 0});
  CHECK(euler_data(fixture("genus1").X).chi_c == 0);
  CHECK(euler_data(fixture("genus1").X).genus == 1);
  auto th = euler_data(fixture("theta").X);
  CHECK(th.genus == 2);
  CHECK(th.chi_c == -2);
}

TEST_CASE("unknown endpoints are rejected") {
  auto s = lollipop();
  s.edges[1].to = "nowhere";
  try {
    build_complex(s);
    FAIL("accepted an edge to a missing vertex");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownVertex);
  }
}

TEST_CASE("tree edges hang off the skeleton") {
  Complex X = build_complex(lollipop());
  CHECK(X.on_skeleton(X.vertex_index("a")));
  CHECK(!X.on_skeleton(X.vertex_index("t")));
  CHECK(X.compact());
  CHECK(branches_at(X, X.vertex_index("a")).size() == 3);
  auto info = arity_at(X, X.vertex_index("a"), skeleton_of(X));
  CHECK(info.arity == 2);
  CHECK(chi_point(X, X.vertex_index("a"), skeleton_of(X)) == 0);
}

TEST_CASE("partition identity survives subdivision") {
  for (auto name : {"theta", "path3", "circle"}) {
    Complex X = fixture(name).X;
    auto S = X.S();
    auto before = verify_partition_identity(X, S);
    CHECK(before.pass);
    Complex Y = subdivide(X, 0, X.edges[0].length / 3, "cut");
    CHECK(euler_data(Y) == euler_data(X));
    CHECK(verify_partition_identity(Y, S).lhs == before.lhs);
    auto S2 = S;
    S2.push_back(Y.vertex_index("cut"));
    CHECK(verify_partition_identity(Y, S2).pass);
  }
}

TEST_CASE("partition identity needs the whole core") {
  Complex X = fixture("path3").X;
  CHECK_THROWS_AS(verify_partition_identity(X, {X.vertex_index("s1")}), Error);
}

TEST_CASE("quotient collapses unmarked runs") {
  Complex X = subdivide(fixture("circle").X, 0, Q(1, 2), "m");
  std::vector<char> marked(X.nv(), 0);
  marked[X.vertex_index("v0")] = 1;
  AGraph A = quotient(X, skeleton_of(X), marked);
  CHECK(A.nv() == 1);
  CHECK(A.edges.size() == 1);
  auto c = graph_counts(A);
  CHECK(c.v == 1);
  CHECK(c.e == 1);
}

TEST_CASE("normalization keeps euler data") {
  for (auto name : {"theta", "path3"}) {
    Complex X = fixture(name).X;
    CHECK(euler_data(normalize_triangulation(X)) == euler_data(X));
  }
}
