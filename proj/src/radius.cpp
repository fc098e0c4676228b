#include "skelcalc/radius.hpp"

#include <algorithm>
#include <set>

namespace skc {

namespace {

[[noreturn]] void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

std::vector<int> tree_parent(const Complex& X) {
  std::vector<int> p(X.nv(), -1);
  for (int i = 0; i < X.ne(); ++i)
    if (X.edges[i].kind == EdgeKind::Tree) p[X.edges[i].b] = i;
  return p;
}

bool constant_on(const EdgePL& f) {
  for (auto& p : f.pts)
    if (p.second != f.pts.front().second) return false;
  return true;
}

std::string idx(int i) { return std::to_string(i); }

}  // namespace

const char* solv_name(Solv s) {
  switch (s) {
    case Solv::Spectral: return "spectral";
    case Solv::Solvable: return "solvable";
    case Solv::Oversolvable: return "oversolvable";
  }
  return "?";
}

void validate_profile(const Complex& X, const Profile& P) {
  if (P.rank < 1) fail(ErrorKind::InvalidRank, "rank must be positive");
  if (static_cast<int>(P.logR.size()) != P.rank)
    fail(ErrorKind::ValidationError, "profile has " + std::to_string(P.logR.size()) +
                                         " functions for rank " + std::to_string(P.rank));
  for (int i = 0; i < P.rank; ++i) {
    auto& F = P.logR[i];
    validate_fn(X, F);
    for (int x = 0; x < X.nv(); ++x)
      if (F.vval[x] > 0)
        fail(ErrorKind::ValidationError, "log R_" + idx(i + 1) + " positive at " + X.vertices[x].id);
    for (int e = 0; e < X.ne(); ++e)
      for (auto& p : F.edge[e].pts)
        if (p.second > 0)
          fail(ErrorKind::ValidationError, "log R_" + idx(i + 1) + " positive on " + X.edges[e].id);
    for (int g = 0; g < X.ng(); ++g)
      if (X.germs[g].kind == GermKind::OpenBoundary && F.germ[g] > 0)
        fail(ErrorKind::ValidationError,
             "log R_" + idx(i + 1) + " increases toward infinity on " + X.germs[g].id);
  }
  for (int i = 0; i + 1 < P.rank; ++i) {
    auto& F = P.logR[i];
    auto& G = P.logR[i + 1];
    for (int x = 0; x < X.nv(); ++x)
      if (F.vval[x] > G.vval[x])
        fail(ErrorKind::ValidationError, "radii out of order at " + X.vertices[x].id);
    for (int e = 0; e < X.ne(); ++e) {
      std::set<Q> pos;
      for (auto& p : F.edge[e].pts) pos.insert(p.first);
      for (auto& p : G.edge[e].pts) pos.insert(p.first);
      for (auto& s : pos)
        if (eval(F, e, s) > eval(G, e, s))
          fail(ErrorKind::ValidationError, "radii out of order on " + X.edges[e].id);
    }
    for (int g = 0; g < X.ng(); ++g) {
      int x = X.germs[g].at;
      if (F.vval[x] == G.vval[x] && F.germ[g] > G.germ[g])
        fail(ErrorKind::ValidationError, "radii cross along " + X.germs[g].id);
    }
  }
}

PLFunction partial_height(const Complex& X, const Profile& P, int i) {
  if (i < 1 || i > P.rank) fail(ErrorKind::IndexOutOfRange, "index " + idx(i) + " outside 1.." + idx(P.rank));
  PLFunction H = P.logR[0];
  for (int j = 1; j < i; ++j) H = add(X, H, P.logR[j]);
  return canonical(H);
}

Classification classify(const Complex& X, const Profile& P, int x) {
  if (x < 0 || x >= X.nv()) fail(ErrorKind::UnknownVertex, "vertex index out of range");
  Classification c;
  Q thr = -X.vertices[x].depth;
  for (int i = 1; i <= P.rank; ++i) {
    const Q& v = P.logR[i - 1].vval[x];
    Solv s = v < thr ? Solv::Spectral : (v == thr ? Solv::Solvable : Solv::Oversolvable);
    c.cls.push_back(s);
    if (s == Solv::Spectral) c.i_sp = i;
    if (s != Solv::Oversolvable) c.i_sol = i;
  }
  for (int i = 1; i <= P.rank; ++i) {
    bool vert = i == P.rank || P.logR[i - 1].vval[x] < P.logR[i].vval[x];
    c.is_vertex.push_back(vert);
    c.vertex_free_of_solvability.push_back(vert && c.i_sp == c.i_sol);
  }
  return c;
}

Subgraph controlling_of(const Complex& X, const PLFunction& F) {
  Subgraph G = skeleton_of(X);
  auto parent = tree_parent(X);
  for (int i = 0; i < X.ne(); ++i) {
    if (X.edges[i].kind != EdgeKind::Tree || constant_on(F.edge[i])) continue;
    int e = i;
    while (e >= 0 && !G.e[e]) {
      G.e[e] = 1;
      G.v[X.edges[e].a] = G.v[X.edges[e].b] = 1;
      e = parent[X.edges[e].a];
    }
  }
  return G;
}

LinGraph lin_of(const Complex& X, const std::vector<char>& S, const Subgraph& G,
                const std::vector<const PLFunction*>& fns) {
  LinGraph L;
  L.G = G;
  L.marked = canonical_vertices(X, G, S);
  for (int x = 0; x < X.nv(); ++x) {
    if (!G.v[x] || L.marked[x]) continue;
    std::vector<Branch> in;
    for (auto& b : branches_at(X, x))
      if (contains(G, b)) in.push_back(b);
    if (in.size() != 2) continue;
    for (auto* F : fns)
      if (slope_along(X, *F, in[0]) + slope_along(X, *F, in[1]) != 0) L.marked[x] = 1;
  }
  L.A = quotient(X, G, L.marked);
  L.c = graph_counts(L.A);
  return L;
}

Analysis analyze(const Instance& I) {
  Analysis A;
  A.base = I.X;
  A.flags = I.flags;
  A.r = I.P.rank;
  if (A.r > 0) validate_profile(I.X, I.P);
  auto R = refine(I.X, I.P.logR);
  A.X = R.X;
  A.P.rank = A.r;
  A.P.logR = R.fns;
  const Complex& X = A.X;
  for (int i = 1; i <= A.r; ++i) A.H.push_back(partial_height(X, A.P, i));
  A.gamma_S = skeleton_of(X);
  A.S.assign(X.nv(), 0);
  for (int x = 0; x < X.nv(); ++x) A.S[x] = X.vertices[x].in_S;
  A.gamma.push_back(A.gamma_S);
  A.tot.push_back(A.gamma_S);
  {
    LinGraph L;
    L.marked = A.S;
    L.A = quotient(X, A.gamma_S, A.S);
    A.lin.push_back(L.marked);
    A.lin_graph.push_back(L.A);
    A.lin_counts.push_back(graph_counts(L.A));
  }
  std::vector<const PLFunction*> fns;
  for (int i = 1; i <= A.r; ++i) {
    A.gamma.push_back(controlling_of(X, A.P.logR[i - 1]));
    A.tot.push_back(unite(A.tot.back(), A.gamma.back()));
    fns.push_back(&A.P.logR[i - 1]);
    auto L = lin_of(X, A.S, A.tot.back(), fns);
    A.lin.push_back(L.marked);
    A.lin_graph.push_back(L.A);
    A.lin_counts.push_back(L.c);
  }
  for (int x = 0; x < X.nv(); ++x) A.cls.push_back(classify(X, A.P, x));
  return A;
}

ExceptionalSets exceptional_sets(const Analysis& A) {
  const Complex& X = A.X;
  ExceptionalSets ex;
  std::vector<char> none(X.nv(), 0);
  ex.E.push_back(none);
  ex.aleph.push_back(none);
  ex.C.push_back(none);
  ex.C_avoids_skeleton.push_back(1);
  ex.C_in_previous.push_back(1);
  for (int i = 1; i <= A.r; ++i) {
    std::vector<char> E(X.nv(), 0), al(X.nv(), 0);
    for (int x = 0; x < X.nv(); ++x) E[x] = laplacian(X, A.H[i - 1], x) > 0;
    if (i >= 2) {
      auto GH = controlling_of(X, A.H[i - 1]);
      const Subgraph& Gi = A.gamma[i];
      for (int x = 0; x < X.nv(); ++x) {
        if (X.on_skeleton(x)) continue;
        if (A.cls[x].cls[i - 1] != Solv::Solvable) continue;
        if (!Gi.v[x] || arity_at(X, x, Gi).arity != 1) continue;
        if (!A.tot[i - 1].v[x] || !GH.v[x]) continue;
        al[x] = 1;
      }
    }
    std::vector<char> C = ex.C.back();
    for (int x = 0; x < X.nv(); ++x) C[x] |= al[x];
    bool avoids = true, inside = true;
    for (int x = 0; x < X.nv(); ++x) {
      if (!C[x]) continue;
      if (X.on_skeleton(x)) avoids = false;
      if (!A.tot[i - 1].v[x]) inside = false;
    }
    ex.E.push_back(E);
    ex.aleph.push_back(al);
    ex.C.push_back(C);
    ex.C_avoids_skeleton.push_back(avoids);
    ex.C_in_previous.push_back(inside);
  }
  return ex;
}

std::vector<Row> verify_superharmonicity(const Analysis& A) {
  return verify_superharmonicity(A, exceptional_sets(A));
}

std::vector<Row> verify_superharmonicity(const Analysis& A, const ExceptionalSets& ex) {
  const Complex& X = A.X;
  std::vector<Row> rows;
  for (int i = 1; i <= A.r; ++i) {
    const PLFunction& H = A.H[i - 1];
    for (int x = 0; x < X.nv(); ++x) {
      auto& v = X.vertices[x];
      Q dd = laplacian(X, H, x);
      auto& c = A.cls[x];
      if (v.depth == 0 && !v.boundary && (v.tr || v.genus == 0)) {
        Q chi = chi_point(X, x, A.gamma_S);
        Q bound = -chi * std::min(i, c.i_sp);
        Row r = le_row(rowid::kLaplaceAtSkeleton, i, v.id, "ddc H_i", dd, bound);
        r.equality_expected = c.vertex_free_of_solvability[i - 1];
        rows.push_back(r);
      }
      if (!A.S[x] && !ex.C[i][x])
        rows.push_back(le_row(rowid::kHeightOffExceptional, i, v.id, "ddc H_i", dd, Q(0)));
      if (v.depth != 0) {
        if (i == 1)
          rows.push_back(le_row(rowid::kFirstRadiusOffSkeleton, 1, v.id, "ddc log R_1",
                                laplacian(X, A.P.logR[0], x), Q(0)));
        if (c.cls[i - 1] == Solv::Solvable)
          rows.push_back(le_row(rowid::kSolvableRadius, i, v.id, "ddc log R_i",
                                laplacian(X, A.P.logR[i - 1], x), Q(1)));
        rows.push_back(le_row(rowid::kHeightAtExceptional, i, v.id, "ddc H_i", dd, Q(i - 1)));
      }
    }
    long long misplaced = 0;
    for (int x = 0; x < X.nv(); ++x)
      if (ex.C[i][x] && (X.on_skeleton(x) || !A.tot[i - 1].v[x])) ++misplaced;
    rows.push_back(le_row(rowid::kExceptionalPlacement, i, "*",
                          "C_i points on the skeleton or outside the previous graph",
                          Q(misplaced), Q(0)));
  }
  return rows;
}

CriterionResult gamma_prime_criterion(const Analysis& A, const Subgraph& G, int i) {
  const Complex& X = A.X;
  if (i < 1 || i > A.r) fail(ErrorKind::IndexOutOfRange, "index " + idx(i) + " outside 1.." + idx(A.r));
  if (!subset_of(A.gamma_S, G)) fail(ErrorKind::GammaDoesNotContainSkeleton, "graph misses the skeleton");
  CriterionResult res;
  res.holds.assign(X.nv(), 0);
  int gv = 0, ge = 0;
  for (int x = 0; x < X.nv(); ++x) gv += G.v[x];
  for (int e = 0; e < X.ne(); ++e) ge += G.e[e];
  bool single_point = gv == 1 && ge == 0;
  res.conclusion = true;
  for (int x = 0; x < X.nv(); ++x) {
    if (!G.v[x]) continue;
    auto& v = X.vertices[x];
    auto& c = A.cls[x];
    bool flat = true;
    for (auto& b : branches_at(X, x)) {
      if (contains(G, b)) continue;
      if (b.germ && X.germs[b.index].kind == GermKind::BoundarySingular) continue;
      for (int j = 1; j <= i; ++j)
        if (slope_along(X, A.P.logR[j - 1], b) != 0) flat = false;
    }
    bool ok = flat || c.i_sp == 0;
    if (!ok && !v.boundary && v.tr && !single_point) {
      bool lap = true;
      for (int j = 1; j <= std::min(i, c.i_sp); ++j) {
        Q inside = laplacian_split(X, A.H[j - 1], x, G).inside;
        Q need = v.depth == 0 ? Q(-chi_point(X, x, A.gamma_S) * j) : Q(0);
        if (inside < need) lap = false;
      }
      ok = lap;
    }
    res.holds[x] = ok;
    if (!ok) res.conclusion = false;
  }
  res.contained = subset_of(A.tot[i], G);
  return res;
}

Propagation unit_propagation(const Analysis& A) {
  const Complex& X = A.X;
  if (A.r < 1) return Propagation::NotApplicable;
  const PLFunction& R1 = A.P.logR[0];
  for (int x = 0; x < X.nv(); ++x)
    if (A.S[x] && R1.vval[x] != 0) return Propagation::NotApplicable;
  for (int g = 0; g < X.ng(); ++g)
    if (X.germs[g].kind == GermKind::OpenBoundary && R1.germ[g] != 0) return Propagation::NotApplicable;
  for (auto& F : A.P.logR) {
    for (auto& v : F.vval)
      if (v != 0) return Propagation::Violated;
    for (auto& e : F.edge)
      for (auto& p : e.pts)
        if (p.second != 0) return Propagation::Violated;
    for (auto& s : F.germ)
      if (s != 0) return Propagation::Violated;
  }
  return Propagation::Holds;
}

std::vector<Row> profile_rows(const Analysis& A) {
  const Complex& X = A.X;
  std::vector<Row> rows;
  for (int i = 1; i <= A.r; ++i) {
    auto qr = quantization_check(X, A.P.logR[i - 1], A.r);
    rows.push_back(le_row(rowid::kQuantization, i, "log R_i", "slopes outside the 1/j lattice",
                          Q(qr.offending.size()), Q(0)));
    auto qh = quantization_check(X, A.H[i - 1], A.r);
    rows.push_back(le_row(rowid::kQuantization, i, "H_i", "slopes outside the 1/j lattice",
                          Q(qh.offending.size()), Q(0)));
    if (qh.min_nonzero_abs != 0)
      rows.push_back(ge_row(rowid::kQuantization, i, "H_i", "smallest nonzero |slope|",
                            qh.min_nonzero_abs, Q(1, A.r)));
    auto crit = gamma_prime_criterion(A, A.gamma_S, i);
    Row r = le_row(rowid::kControlCriterion, i, "Gamma_S", "criterion holds but graph escapes",
                   Q(crit.conclusion && !crit.contained ? 1 : 0), Q(0));
    r.note = crit.conclusion ? "criterion holds" : "criterion fails somewhere";
    rows.push_back(r);
  }
  auto up = unit_propagation(A);
  Row r = eq_row(rowid::kUnitPropagation, 0, "X", "radii identically 1",
                 Q(up == Propagation::Violated ? 0 : 1), Q(1), up != Propagation::NotApplicable,
                 "first radius not 1 on S or at infinity");
  rows.push_back(r);
  return rows;
}

}  // namespace skc
