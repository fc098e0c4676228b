#include "skelcalc/bounds.hpp"
#include "skelcalc/gen.hpp"
#include "skelcalc/io.hpp"

#include <doctest.h>

using namespace skc;

namespace {

// R_1 dips at the tree point t0, so H_1 is sub-harmonic there.
const char* kDip = R"([skeleton]
vertex=v0 genus=1 degree=1 boundary=0 S=1 tr=1 depth=0
vertex=t0 genus=0 degree=1 boundary=0 S=0 tr=1 depth=1
vertex=t1 genus=0 degree=1 boundary=0 S=0 tr=1 depth=2
edge=f0 from=v0 to=t0 length=1 degree=1 kind=tree
edge=f1 from=t0 to=t1 length=1 degree=1 kind=tree
[profiles]
rank=1
R1.v0=-1
R1.t0=-2
R1.t1=-1
)";

std::vector<Row> failing(const std::vector<Row>& rows, const std::string& eq) {
  std::vector<Row> out;
  for (auto& r : rows)
    if (r.eq == eq && r.status == Status::Fail) out.push_back(r);
  return out;
}

}  // namespace

TEST_CASE("slope gap and bound constants") {
  std::vector<long long> kappa{1, 2, 6, 12, 20, 30, 42, 56, 72, 90};
  std::vector<long long> lambda{2, 4, 6, 12, 20, 30, 42, 56, 72, 90};
  for (int r = 1; r <= 10; ++r) {
    CHECK(kappa_lambda(r).kappa == kappa[r - 1]);
    CHECK(kappa_lambda(r).lambda == lambda[r - 1]);
  }
  CHECK_THROWS_AS(kappa_lambda(0), Error);
}

TEST_CASE("classification against the depth threshold") {
  Instance I = parse_instance(kDip);
  auto c = classify(I.X, I.P, I.X.vertex_index("t0"));
  CHECK(c.cls[0] == Solv::Spectral);
  CHECK(c.i_sp == 1);
  c = classify(I.X, I.P, I.X.vertex_index("t1"));
  CHECK(c.cls[0] == Solv::Oversolvable);
  CHECK(c.i_sol == 0);
}

TEST_CASE("partial heights add the radii") {
  Instance I = fixture("theta");
  PLFunction H2 = partial_height(I.X, I.P, 2);
  CHECK(H2.vval[0] == Q(-3, 2));
  CHECK_THROWS_AS(partial_height(I.X, I.P, 3), Error);
}

TEST_CASE("laplace bound at the circle vertex is zero") {
  Analysis A = analyze(fixture("circle"));
  int seen = 0;
  for (auto& r : verify_superharmonicity(A))
    if (r.eq == rowid::kLaplaceAtSkeleton) {
      CHECK(r.bound == 0);
      CHECK(r.status == Status::Pass);
      ++seen;
    }
  CHECK(seen == 1);
}

TEST_CASE("admissible fixtures respect the laplace bound on the skeleton") {
  for (auto& name : fixture_names()) {
    Analysis A = analyze(fixture(name));
    CHECK(failing(verify_superharmonicity(A), rowid::kLaplaceAtSkeleton).empty());
  }
}

TEST_CASE("a sub-harmonic tree point is caught where it is") {
  Analysis A = analyze(parse_instance(kDip));
  auto ex = exceptional_sets(A);
  int t0 = A.X.vertex_index("t0");
  CHECK(ex.E[1][t0]);
  CHECK(!A.S[t0]);
  CHECK(!ex.C[1][t0]);
  auto bad = failing(verify_superharmonicity(A), rowid::kHeightOffExceptional);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].locus == "t0");
  CHECK(bad[0].observed == Q(2));
}

TEST_CASE("generated off-skeleton points stay below i - 1") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GenParams p;
    p.seed = seed;
    p.rank = 1 + static_cast<int>(seed % 3);
    p.shape = seed % 2 ? "disk" : "general";
    Analysis A = analyze(generate(p));
    for (auto& r : verify_superharmonicity(A))
      if (r.eq == rowid::kHeightAtExceptional) {
        CHECK(r.status == Status::Pass);
        ++checked;
      }
  }
  CHECK(checked > 0);
}

TEST_CASE("controlling graph follows the non-constant tree edges") {
  Instance I = parse_instance(kDip);
  Subgraph G = controlling_of(I.X, I.P.logR[0]);
  CHECK(G.e[I.X.edge_index("f0")]);
  CHECK(G.e[I.X.edge_index("f1")]);
  CHECK(subset_of(skeleton_of(I.X), G));
}

TEST_CASE("radii must be ordered") {
  Instance I = fixture("theta");
  std::swap(I.P.logR[0], I.P.logR[1]);
  CHECK_THROWS_AS(validate_profile(I.X, I.P), Error);
}

TEST_CASE("criterion on the skeleton of an elliptic curve") {
  for (auto name : {"circle", "genus1"}) {
    Analysis A = analyze(fixture(name));
    auto c = gamma_prime_criterion(A, A.gamma_S, 1);
    CHECK(c.conclusion);
    CHECK(c.contained);
  }
}
