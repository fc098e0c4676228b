#include "skelcalc/bounds.hpp"
#include "skelcalc/gen.hpp"
#include "skelcalc/io.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace skc;

namespace {

std::vector<Q> zeros(int r) { return std::vector<Q>(r + 1, Q(0)); }

Q row_value(const std::vector<Row>& rows, const std::string& eq, int i, const std::string& q) {
  for (auto& r : rows)
    if (r.eq == eq && r.index == i && r.quantity == q) return r.bound;
  FAIL("no row " << eq << " " << i << " " << q);
  return 0;
}

}  // namespace

TEST_CASE("theta recursion, two steps") {
  Recursion R = recursion(2, Q(-2), zeros(2), Q(0), Q(2), Q(3));
  CHECK(R.f == std::vector<Q>{0, 4, 20});
  CHECK(R.v == std::vector<Q>{2, 18, 86});
  CHECK(R.e == std::vector<Q>{3, 19, 87});
}

TEST_CASE("the theta report carries the same sequence") {
  auto rows = bound_report(analyze(fixture("theta")));
  CHECK(row_value(rows, rowid::kRecursion, 1, "f_n") == 4);
  CHECK(row_value(rows, rowid::kRecursion, 1, "v_n") == 18);
  CHECK(row_value(rows, rowid::kRecursion, 2, "v_n") == 86);
  CHECK(row_value(rows, rowid::kRecursion, 2, "e_n") == 87);
}

TEST_CASE("no driver, no growth") {
  for (int r = 1; r <= 6; ++r) {
    Recursion R = recursion(r, Q(0), zeros(r), Q(0), Q(5), Q(7));
    for (int n = 0; n <= r; ++n) {
      CHECK(R.f[n] == 0);
      CHECK(R.v[n] == 5);
      CHECK(R.e[n] == 7);
    }
  }
  CHECK_THROWS_AS(recursion(3, Q(0), zeros(1), Q(0), Q(1), Q(1)), Error);
}

TEST_CASE("first theorem is the global step for a compact curve") {
  for (int g = 1; g <= 5; ++g)
    for (int r = 1; r <= 6; ++r) CHECK(first_theorem_increment(g, r) == global_increment(r, Q(2 - 2 * g), 1, 0));
}

TEST_CASE("de rham form of the height bound, random triples") {
  std::mt19937_64 eng(7);
  for (int k = 0; k < 100; ++k) {
    int r = 1 + static_cast<int>(eng() % 8);
    Q chi(static_cast<long long>(eng() % 21) - 10);
    Q irr(static_cast<long long>(eng() % 40), 1 + static_cast<long long>(eng() % 6));
    CHECK(de_rham_increment(r, chi_dR(r, chi, irr)) == global_increment(r, chi, r, irr));
  }
}

TEST_CASE("disk with a singular boundary germ") {
  Analysis A = analyze(fixture("disk-gos"));
  auto d = gos_disks(A);
  REQUIRE(d.size() == 1);
  CHECK(d[0].dH == -3);
  CHECK(d[0].h0 == 1);
  CHECK(d[0].irr_inf == 4);
  CHECK(d[0].h1 == 3);
  CHECK(d[0].h0 - d[0].h1 == d[0].rank - d[0].irr_inf);
  CHECK(irr_infinity(2, Q(-3), Q(1)) == 4);
}

TEST_CASE("elliptic skeleta allow nothing new") {
  for (auto name : {"circle", "genus1"}) {
    Analysis A = analyze(fixture(name));
    for (int i = 1; i <= A.r; ++i) {
      CHECK(A.tot[i] == A.gamma_S);
      CHECK(global_increment(A.r, Q(euler_data(A.X).chi_c), i, irregularity(A).irr[i]) == 0);
    }
    for (auto& r : bound_report(A)) {
      if (r.eq != rowid::kGlobalStep || r.quantity == "new end points (weighted)") continue;
      const Counts& base = A.lin_counts[r.index - 1];
      CHECK(r.bound == Q(r.quantity == "e_w" ? base.e_w : base.v_w));
    }
  }
}

TEST_CASE("disks and annuli of a generated annulus") {
  GenParams p;
  p.shape = "annulus";
  p.seed = 3;
  Instance I = generate(p);
  auto an = annuli_of(I.X);
  CHECK(!an.empty());
  auto dk = disks_of(I.X);
  std::set<int> roots;
  for (auto& d : dk) roots.insert(d.root);
  for (int x : roots) CHECK(I.X.vertices[x].in_S);
}

TEST_CASE("choice of W is checked") {
  Analysis A = analyze(parse_instance(
      "[skeleton]\nvertex=v0 genus=1 S=1\nvertex=t0 depth=1\nvertex=t1 depth=2\n"
      "edge=f0 from=v0 to=t0 length=1 kind=tree\nedge=f1 from=t0 to=t1 length=1 kind=tree\n"
      "[profiles]\nrank=1\nR1.v0=-1\nR1.t0=-2\nR1.t1=-1\n"));
  auto ex = exceptional_sets(A);
  int v0 = A.X.vertex_index("v0"), t0 = A.X.vertex_index("t0"), t1 = A.X.vertex_index("t1");
  REQUIRE(ex.E[1][t0]);
  std::vector<char> W(A.X.nv(), 0);
  CHECK_THROWS_AS(stepwise_rows(A, ex, 1, W), Error);
  W[t0] = W[v0] = 1;
  CHECK_NOTHROW(stepwise_rows(A, ex, 1, W));
  W[t1] = 1;
  CHECK_THROWS_AS(stepwise_rows(A, ex, 1, W), Error);
}

TEST_CASE("each adversarial instance breaks its own row") {
  for (auto& name : adversarial_names()) {
    auto rows = bound_report(analyze(adversarial(name, 1)));
    bool hit = false;
    for (auto& r : rows) hit |= r.eq == adversarial_target(name) && r.status == Status::Fail;
    CHECK_MESSAGE(hit, name);
  }
}

TEST_CASE("admissible fixtures pass every bound") {
  for (auto& name : fixture_names())
    for (auto& r : bound_report(analyze(fixture(name))))
      CHECK_MESSAGE(r.status != Status::Fail, name << " " << r.eq << " " << r.locus << " " << r.quantity);
}

TEST_CASE("a singular germ at the boundary stays out of Delta") {
  Analysis A = analyze(fixture("disk-gos"));
  auto irr = irregularity(A);
  for (int i = 1; i <= A.r; ++i) {
    CHECK(irr.irr[i] == 2 * i);
    CHECK(global_increment(A.r, Q(euler_data(A.X).chi_c), i, irr.irr[i]) == 0);
  }
}

TEST_CASE("an isolated point growing its first branch is not a new end") {
  Analysis A = analyze(parse_instance(
      "[skeleton]\nvertex=s0 genus=2 S=1\nvertex=t0 depth=1\n"
      "edge=f0 from=s0 to=t0 length=1 kind=tree\n"
      "[profiles]\nrank=1\nR1.s0=-2\nR1.t0=-1\n"));
  int seen = 0;
  for (auto& r : bound_report(A))
    if (r.eq == rowid::kGlobalStep && r.quantity == "new end points (weighted)") {
      CHECK(r.observed == Q(1));
      CHECK(r.status == Status::Pass);
      ++seen;
    }
  CHECK(seen == 1);
}
