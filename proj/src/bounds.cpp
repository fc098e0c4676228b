#include "skelcalc/bounds.hpp"

#include <algorithm>

namespace skc {

namespace {

[[noreturn]] void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

std::string idx(int i) { return std::to_string(i); }

using Hyps = std::vector<std::pair<std::string, bool>>;

// Arity of every marked complex vertex inside one abstract graph, -1 elsewhere.
struct View {
  const AGraph* g = nullptr;
  std::vector<int> arity;
  std::vector<char> marked;
};

View view_of(const Complex& X, const AGraph& g) {
  View w;
  w.g = &g;
  w.arity.assign(X.nv(), -1);
  w.marked.assign(X.nv(), 0);
  auto ar = arities(g);
  for (int k = 0; k < g.nv(); ++k) {
    w.arity[g.vmap[k]] = ar[k];
    w.marked[g.vmap[k]] = 1;
  }
  return w;
}

std::vector<std::vector<int>> tree_children(const Complex& X) {
  std::vector<std::vector<int>> kids(X.nv());
  for (int e = 0; e < X.ne(); ++e)
    if (X.edges[e].kind == EdgeKind::Tree) kids[X.edges[e].a].push_back(e);
  return kids;
}

std::vector<int> parent_edges(const Complex& X) {
  std::vector<int> p(X.nv(), -1);
  for (int e = 0; e < X.ne(); ++e)
    if (X.edges[e].kind == EdgeKind::Tree) p[X.edges[e].b] = e;
  return p;
}

void collect(const Complex& X, const std::vector<std::vector<int>>& kids, int e,
             std::vector<int>& verts, std::vector<int>& edges) {
  std::vector<int> stack{e};
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    edges.push_back(c);
    int b = X.edges[c].b;
    verts.push_back(b);
    for (int k : kids[b]) stack.push_back(k);
  }
  std::sort(verts.begin(), verts.end());
  std::sort(edges.begin(), edges.end());
}

struct Marks {
  long long v = 0, v1 = 0, v2 = 0, e = 0;
};

// Marked points among `verts`; e adds the degree of the edge above each of them.
Marks tree_marks(const Complex& X, const View& w, const std::vector<int>& verts,
                 const std::vector<int>& parent) {
  Marks m;
  for (int x : verts) {
    if (!w.marked[x]) continue;
    long long d = X.vertices[x].degree;
    m.v += d;
    if (w.arity[x] == 1) m.v1 += d;
    if (w.arity[x] == 2) m.v2 += d;
    m.e += X.edges[parent[x]].degree;
  }
  return m;
}

bool superharmonic_on(const Complex& X, const PLFunction& H, const std::vector<int>& verts) {
  for (int x : verts)
    if (laplacian(X, H, x) > 0) return false;
  return true;
}

bool edges_in(const Subgraph& G, const std::vector<int>& edges) {
  for (int e : edges)
    if (G.e[e]) return true;
  return false;
}

Branch reversed(const Branch& b) { return {b.germ, b.index, !b.forward}; }

// Sum of the two skeleton slopes at every joint; zero means no break there.
bool affine_along(const Complex& X, const PLFunction& F, const Annulus& C) {
  for (size_t k = 0; k < C.joints.size(); ++k)
    if (slope_along(X, F, reversed(C.steps[k])) + slope_along(X, F, C.steps[k + 1]) != 0)
      return false;
  return true;
}

struct DiskIds {
  std::string first, total;
};

void disk_family(std::vector<Row>& rows, const Analysis& A, const View& w, int i,
                 const PLFunction& H, const DiskIds& ids, const Disk& D, const Hyps& hyp) {
  const Complex& X = A.X;
  auto kl = kappa_lambda(A.r);
  auto parent = parent_edges(X);
  Marks m = tree_marks(X, w, D.verts, parent);
  std::vector<char> inD(X.nv(), 0);
  for (int x : D.verts) inD[x] = 1;
  long long ew = 0;
  for (auto& e : w.g->edges)
    if (inD[w.g->vmap[e.a]] || (e.b >= 0 && inD[w.g->vmap[e.b]])) ew += e.deg;
  Q sigma = slope_along(X, H, Branch{false, D.edge, true});
  Q deg = X.edges[D.edge].degree;
  std::string loc = "disk " + X.edges[D.edge].id;
  std::vector<Row> out;
  out.push_back(le_row(ids.first, i, loc, "v1_w/r + v2_w/kappa",
                       Q(m.v1) / A.r + Q(m.v2) / kl.kappa, deg * sigma));
  out.push_back(ge_row(ids.first, i, loc, "sigma", sigma, Q(0)));
  out.push_back(eq_row(ids.first, i, loc, "sigma = 0 iff no marked points",
                       Q((sigma == 0) == (m.v == 0) ? 1 : 0), Q(1)));
  out.push_back(le_row(ids.total, i, loc, "v_w", Q(m.v), deg * kl.lambda * sigma));
  out.push_back(eq_row(ids.total, i, loc, "e_w - v_w", Q(ew - m.v), Q(0)));
  for (auto& r : out) rows.push_back(require(r, hyp));
}

struct AnnulusIds {
  std::string skeleton, trees, total;
};

void annulus_family(std::vector<Row>& rows, const Analysis& A, const View& w, int i,
                    const PLFunction& H, const AnnulusIds& ids, const Annulus& C,
                    const Hyps& hyp) {
  const Complex& X = A.X;
  auto kl = kappa_lambda(A.r);
  auto parent = parent_edges(X);
  Q sm = slope_along(X, H, C.steps.front());
  Q sp = C.end_germ >= 0 ? slope_at_infinity(H, C.end_germ) : slope_along(X, H, C.back);
  Q deg = branch_degree(X, C.steps.front());
  Q sum = sm + sp;
  long long cv = 0, ce = branch_degree(X, C.steps.front());
  for (size_t k = 0; k < C.joints.size(); ++k) {
    int x = C.joints[k];
    if (!w.marked[x]) continue;
    cv += X.vertices[x].degree;
    ce += branch_degree(X, C.steps[k + 1]);
  }
  Marks t = tree_marks(X, w, C.tree_verts, parent);
  std::string loc = "annulus " + C.name;
  std::vector<Row> out;
  out.push_back(le_row(ids.skeleton, i, loc, "v_w on the annulus skeleton", Q(cv),
                       deg * kl.kappa * sum));
  out.push_back(eq_row(ids.skeleton, i, loc, "e_w - deg - v_w on the annulus skeleton",
                       Q(ce) - deg - Q(cv), Q(0)));
  out.push_back(le_row(ids.trees, i, loc, "v1_w/r + v2_w/kappa off the annulus skeleton",
                       Q(t.v1) / A.r + Q(t.v2) / kl.kappa, deg * sum));
  out.push_back(le_row(ids.total, i, loc, "v_w", Q(cv + t.v), deg * 2 * kl.lambda * sum));
  out.push_back(le_row(ids.total, i, loc, "e_w", Q(ce + t.e), deg * (2 * kl.lambda * sum + 1)));
  for (auto& r : out) rows.push_back(require(r, hyp));
}

// dd^c taken inside X: a singular germ at a boundary point leaves X.
Q inner_laplacian(const Complex& X, const PLFunction& H, int x) {
  Q s = laplacian(X, H, x);
  for (int g = 0; g < X.ng(); ++g)
    if (X.germs[g].at == x && X.germs[g].kind == GermKind::BoundarySingular)
      s -= X.germs[g].degree * H.germ[g];
  return s;
}

Q sum_over(const Complex& X, const PLFunction& H, const std::vector<char>& W) {
  Q s = 0;
  for (int x = 0; x < X.nv(); ++x)
    if (W[x]) s += inner_laplacian(X, H, x);
  return s;
}

Q germ_sum(const Complex& X, const PLFunction& H) {
  Q s = 0;
  for (int g = 0; g < X.ng(); ++g)
    if (X.germs[g].kind == GermKind::OpenBoundary) s += X.germs[g].degree * slope_at_infinity(H, g);
  return s;
}

// An isolated point that grows its first branch is the root of a disk, not a new end.
long long new_ends(const Complex& X, const View& cur, const View& prev) {
  long long n = 0;
  for (int x = 0; x < X.nv(); ++x)
    if (cur.arity[x] == 1 && prev.arity[x] != 1 && prev.arity[x] != 0) n += X.vertices[x].degree;
  return n;
}

bool chi_nonpositive(const Analysis& A) {
  for (int x = 0; x < A.X.nv(); ++x)
    if (A.S[x] && !A.X.vertices[x].boundary && chi_point(A.X, x, A.gamma_S) > 0) return false;
  return true;
}

bool within(const std::vector<char>& a, const std::vector<char>& b) {
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] && !b[k]) return false;
  return true;
}

LinGraph height_graph(const Analysis& A, int i) {
  const PLFunction& H = A.H[i - 1];
  return lin_of(A.X, A.S, controlling_of(A.X, H), {&H});
}

bool disk_scenario(const Complex& X) {
  int ns = 0;
  for (auto& v : X.vertices) ns += v.in_S;
  for (auto& e : X.edges)
    if (e.kind == EdgeKind::Skeleton) return false;
  return ns == 1 && X.compact();
}

}  // namespace

KappaLambda kappa_lambda(int r) {
  if (r < 1) fail(ErrorKind::InvalidRank, "rank " + idx(r) + " is not positive");
  long long R = r;
  return {std::max(R * (R - 1), 1LL), R * std::max(R - 1, 2LL)};
}

IrregularityData irregularity(const Analysis& A) {
  const Complex& X = A.X;
  IrregularityData d;
  d.r = A.r;
  d.delta.resize(A.r + 1);
  d.germ_terms.resize(A.r + 1);
  d.irr.assign(A.r + 1, Q(0));
  for (int i = 1; i <= A.r; ++i) {
    const PLFunction& H = A.H[i - 1];
    if (H.germ.size() != static_cast<size_t>(X.ng()))
      fail(ErrorKind::HypothesisFailed, "germ slope missing for H_" + idx(i));
    for (int x = 0; x < X.nv(); ++x) {
      if (!X.vertices[x].boundary) continue;
      Q delta = inner_laplacian(X, H, x) + chi_point(X, x, A.gamma_S) * i;
      d.delta[i].push_back({x, delta});
      d.irr[i] += delta;
    }
    for (int g = 0; g < X.ng(); ++g) {
      if (X.germs[g].kind != GermKind::OpenBoundary) continue;
      Q t = X.germs[g].degree * slope_at_infinity(H, g);
      d.germ_terms[i].push_back({g, t});
      d.irr[i] += t;
    }
  }
  return d;
}

Q irr_infinity(int r, const Q& dH, const Q& h0) { return Q(r) - dH - h0; }

std::vector<DiskGOS> gos_disks(const Analysis& A) {
  const Complex& X = A.X;
  std::vector<DiskGOS> out;
  if (A.r < 1) return out;
  for (int g = 0; g < X.ng(); ++g) {
    if (X.germs[g].kind != GermKind::BoundarySingular) continue;
    DiskGOS d;
    d.vertex = X.germs[g].at;
    d.germ = g;
    d.rank = A.r;
    d.dH = A.H[A.r - 1].germ[g];
    for (auto& F : A.P.logR)
      if (F.vval[d.vertex] == 0 && F.germ[g] == 0) d.h0 += 1;
    d.h1 = -d.dH;
    d.irr_inf = irr_infinity(A.r, d.dH, d.h0);
    out.push_back(d);
  }
  return out;
}

Recursion recursion(int r, const Q& chi_c, const std::vector<Q>& irr, const Q& f0, const Q& v0,
                    const Q& e0) {
  auto kl = kappa_lambda(r);
  if (static_cast<int>(irr.size()) < r + 1)
    fail(ErrorKind::IndexOutOfRange, "need irregularity for every index up to " + idx(r));
  Recursion R;
  R.f.push_back(f0);
  R.v.push_back(v0);
  R.e.push_back(e0);
  Q fsum = 0;  // f_1 + ... + f_n
  for (int n = 0; n < r; ++n) {
    Q L = kl.lambda;
    R.f.push_back(R.f[n] - r * chi_c * (n + 1) + Q(r) * n * fsum + r * irr[n + 1]);
    Q common = -2 * L * chi_c * (n + 1) + (2 * L * n + 1) * fsum + 2 * L * irr[n + 1];
    R.v.push_back(R.v[n] + common);
    R.e.push_back(R.e[n] + common);
    fsum += R.f[n + 1];
  }
  return R;
}

Q first_theorem_increment(long long g, int r) {
  return Q(4) * (g - 1) * r * std::max(r - 1, 2);
}

Q global_increment(int r, const Q& chi_c, int i, const Q& irr) {
  return 2 * Q(kappa_lambda(r).lambda) * (-chi_c * i + irr);
}

Q chi_dR(int r, const Q& chi_c, const Q& irr_r) { return r * chi_c - irr_r; }

Q de_rham_increment(int r, const Q& chi_dr) { return -2 * Q(kappa_lambda(r).lambda) * chi_dr; }

std::vector<Disk> disks_of(const Complex& X) {
  auto kids = tree_children(X);
  std::vector<Disk> out;
  for (int e = 0; e < X.ne(); ++e) {
    auto& E = X.edges[e];
    if (E.kind != EdgeKind::Tree || !X.vertices[E.a].in_S) continue;
    Disk D;
    D.root = E.a;
    D.edge = e;
    collect(X, kids, e, D.verts, D.edges);
    out.push_back(D);
  }
  return out;
}

std::vector<Annulus> annuli_of(const Complex& X) {
  Subgraph sk = skeleton_of(X);
  auto kids = tree_children(X);
  std::vector<Annulus> out;
  std::vector<char> used_e(X.ne(), 0), used_g(X.ng(), 0);
  for (int u = 0; u < X.nv(); ++u) {
    if (!X.vertices[u].in_S) continue;
    for (auto& b0 : branches_at(X, u)) {
      if (!contains(sk, b0)) continue;
      if (b0.germ ? used_g[b0.index] : used_e[b0.index]) continue;
      Annulus C;
      C.start = u;
      Branch b = b0;
      while (true) {
        C.steps.push_back(b);
        if (b.germ) {
          used_g[b.index] = 1;
          C.end_germ = b.index;
          break;
        }
        used_e[b.index] = 1;
        int x = branch_far_end(X, b);
        Branch in = reversed(b);
        if (X.vertices[x].in_S) {
          C.end = x;
          C.back = in;
          break;
        }
        C.joints.push_back(x);
        Branch next;
        bool found = false;
        for (auto& c : branches_at(X, x))
          if (contains(sk, c) && !(c == in)) next = c, found = true;
        if (!found) fail(ErrorKind::NotAPath, X.vertices[x].id + ": skeleton dead end outside S");
        b = next;
      }
      for (int x : C.joints)
        for (int k : kids[x]) collect(X, kids, k, C.tree_verts, C.tree_edges);
      std::sort(C.tree_verts.begin(), C.tree_verts.end());
      std::sort(C.tree_edges.begin(), C.tree_edges.end());
      auto& f = C.steps.front();
      C.name = f.germ ? X.germs[f.index].id : X.edges[f.index].id;
      out.push_back(C);
    }
  }
  return out;
}

std::vector<Row> disk_rows(const Analysis& A, int i) {
  std::vector<Row> rows;
  if (i < 1 || i > A.r) fail(ErrorKind::IndexOutOfRange, "index " + idx(i));
  View w = view_of(A.X, A.lin_graph[i]);
  for (auto& D : disks_of(A.X)) {
    if (i == 1) {
      disk_family(rows, A, w, 1, A.H[0], {rowid::kDiskFirst, rowid::kDiskFirstTotal}, D, {});
    } else {
      bool clear = !edges_in(A.tot[i - 1], D.edges);
      disk_family(rows, A, w, i, A.H[i - 1], {rowid::kDiskLater, rowid::kDiskLaterTotal}, D,
                  {{"earlier radii constant on the disk", clear}});
    }
  }
  return rows;
}

std::vector<Row> annulus_rows(const Analysis& A, int i) {
  const Complex& X = A.X;
  std::vector<Row> rows;
  if (i < 1 || i > A.r) fail(ErrorKind::IndexOutOfRange, "index " + idx(i));
  View w = view_of(X, A.lin_graph[i]);
  const PLFunction& H = A.H[i - 1];
  for (auto& C : annuli_of(X)) {
    bool clear = !edges_in(A.tot[i - 1], C.tree_edges);
    std::string loc = "annulus " + C.name;
    if (!C.joints.empty()) {
      Q worst;
      bool first = true;
      for (size_t k = 0; k < C.joints.size(); ++k) {
        Q s = branch_degree(X, C.steps[k + 1]) *
              (slope_along(X, H, reversed(C.steps[k])) + slope_along(X, H, C.steps[k + 1]));
        if (first || s > worst) worst = s, first = false;
      }
      Row r = le_row(rowid::kAnnulusConcave, i, loc, "largest skeleton slope sum at a joint",
                     worst, Q(0));
      rows.push_back(require(r, {{"earlier graphs stay on the annulus skeleton", clear}}));
    }
    bool earlier_affine = true;
    for (int j = 1; j < i; ++j)
      if (!affine_along(X, A.P.logR[j - 1], C)) earlier_affine = false;
    annulus_family(rows, A, w, i, H,
                   {rowid::kAnnulusSkeleton, rowid::kAnnulusTrees, rowid::kAnnulusTotal}, C,
                   {{"earlier graphs meet the annulus in its skeleton", clear},
                    {"earlier radii affine along the annulus skeleton", earlier_affine}});
    bool all_affine = earlier_affine && affine_along(X, A.P.logR[i - 1], C);
    long long stray = 0;
    for (int e : C.tree_edges) stray += A.tot[i].e[e];
    Row r = le_row(rowid::kAnnulusTotal, i, loc, "tree edges of the cumulative graph in the annulus",
                   Q(stray), Q(0));
    rows.push_back(require(r, {{"radii up to i affine along the annulus skeleton", all_affine}}));
  }
  return rows;
}

std::vector<Row> stepwise_rows(const Analysis& A, const ExceptionalSets& ex, int i) {
  std::vector<char> W = ex.E.at(i);
  for (int x = 0; x < A.X.nv(); ++x) W[x] |= A.S[x];
  return stepwise_rows(A, ex, i, W);
}

std::vector<Row> stepwise_rows(const Analysis& A, const ExceptionalSets& ex, int i,
                               const std::vector<char>& W) {
  const Complex& X = A.X;
  if (i < 1 || i > A.r) fail(ErrorKind::IndexOutOfRange, "index " + idx(i));
  const auto& E = ex.E[i];
  for (int x = 0; x < X.nv(); ++x) {
    if (E[x] && !W[x]) fail(ErrorKind::InvalidW, X.vertices[x].id + " is exceptional but not in W");
    if (W[x] && !E[x] && !A.lin[i - 1][x])
      fail(ErrorKind::InvalidW, X.vertices[x].id + " is neither exceptional nor a vertex");
  }
  auto kl = kappa_lambda(A.r);
  const PLFunction& H = A.H[i - 1];
  const Counts& prev = A.lin_counts[i - 1];
  const Counts& cur = A.lin_counts[i];
  View vc = view_of(X, A.lin_graph[i]), vp = view_of(X, A.lin_graph[i - 1]);
  long long ends = new_ends(X, vc, vp);
  Q dz = 0;
  for (int x = 0; x < X.nv(); ++x)
    if (E[x] && !A.lin[i - 1][x]) dz += X.vertices[x].degree;
  Q sw = sum_over(X, H, W), ss = sum_over(X, H, A.S), sg = germ_sum(X, H);
  Q L2 = 2 * Q(kl.lambda);
  std::vector<Row> rows;
  auto triple = [&](const std::string& id, const Q& extra, const Q& drive, const Hyps& hyp) {
    Row a = le_row(id, i, "X", "e_w", Q(cur.e_w), Q(prev.e_w) + extra + L2 * drive);
    Row b = le_row(id, i, "X", "v_w", Q(cur.v_w), Q(prev.v_w) + extra + L2 * drive);
    Row c = le_row(id, i, "X", "new end points (weighted)", Q(ends), A.r * drive);
    for (Row* r : {&a, &b, &c}) rows.push_back(require(*r, hyp));
  };
  triple(rowid::kStepCompact, dz, sw, {{"compact", X.compact()}});
  triple(rowid::kStepGerms, dz, sw + sg, {{"log-affine at infinity", true}});
  bool sh = within(E, A.S);
  triple(rowid::kStepSuperharmonic, 0, ss + sg,
         {{"log-affine at infinity", true}, {"super-harmonic off S", sh}});
  if (i >= 2) {
    long long cw = 0;
    for (int x = 0; x < X.nv(); ++x)
      if (ex.C[i - 1][x]) cw += X.vertices[x].degree;
    Q k = Q(cw) + prev.vnw(1);
    Q drive = (i - 1) * k + ss + sg;
    Row a = le_row(rowid::kStepGeneral, i, "X", "e_w", Q(cur.e_w), Q(prev.e_w) + k + L2 * drive);
    Row b = le_row(rowid::kStepGeneral, i, "X", "v_w", Q(cur.v_w), Q(prev.v_w) + k + L2 * drive);
    Row c = le_row(rowid::kStepGeneral, i, "X", "new end points (weighted)", Q(ends), A.r * drive);
    for (Row* r : {&a, &b, &c}) rows.push_back(require(*r, {{"log-affine at infinity", true}}));
  }
  return rows;
}

std::vector<Row> global_rows(const Analysis& A, const ExceptionalSets& ex) {
  const Complex& X = A.X;
  std::vector<Row> rows;
  if (A.r < 1) return rows;
  auto kl = kappa_lambda(A.r);
  auto eu = euler_data(X);
  Q chic = eu.chi_c;
  auto irr = irregularity(A);
  bool chi_ok = chi_nonpositive(A);
  const Counts& base = A.lin_counts[0];
  Hyps common = {{"log-affine at infinity", true}, {"chi(x,S) <= 0 on S off the boundary", chi_ok}};

  for (int i = 1; i <= A.r; ++i) {
    rows.push_back(value_row(rowid::kIrregularity, i, "X", "Irr_i", irr.irr[i]));
    for (auto& [x, d] : irr.delta[i])
      rows.push_back(value_row(rowid::kIrregularity, i, X.vertices[x].id, "Delta_i", d));
  }

  Q irr_sum = 0;
  bool sh_upto = true;
  for (int i = 1; i <= A.r; ++i) {
    const Counts& cur = A.lin_counts[i];
    const Counts& prev = A.lin_counts[i - 1];
    View vc = view_of(X, A.lin_graph[i]), vp = view_of(X, A.lin_graph[i - 1]);
    Q drive = -chic * i + irr.irr[i];
    Q inc = global_increment(A.r, chic, i, irr.irr[i]);
    Hyps h = common;
    h.push_back({"super-harmonic off S", within(ex.E[i], A.S)});
    Row a = le_row(rowid::kGlobalStep, i, "X", "e_w", Q(cur.e_w), Q(prev.e_w) + inc);
    Row b = le_row(rowid::kGlobalStep, i, "X", "v_w", Q(cur.v_w), Q(prev.v_w) + inc);
    Row c = le_row(rowid::kGlobalStep, i, "X", "new end points (weighted)",
                   Q(new_ends(X, vc, vp)), A.r * drive);
    for (Row* r : {&a, &b, &c}) rows.push_back(require(*r, h));

    irr_sum += irr.irr[i];
    if (i >= 2 && !within(ex.E[i], A.S)) sh_upto = false;
    Hyps h2 = common;
    h2.push_back({"super-harmonic off S from index 2 on", sh_upto});
    Q big = Q(kl.lambda) * (-chic * i * (i + 1) + 2 * irr_sum);
    long long off_ends = 0;
    for (int x = 0; x < X.nv(); ++x)
      if (vc.arity[x] == 1 && !X.on_skeleton(x)) off_ends += X.vertices[x].degree;
    Row d = le_row(rowid::kGlobalCumulative, i, "X", "e_w", Q(cur.e_w), Q(base.e_w) + big);
    Row e = le_row(rowid::kGlobalCumulative, i, "X", "v_w", Q(cur.v_w), Q(base.v_w) + big);
    Row f = le_row(rowid::kGlobalCumulative, i, "X", "end points off the skeleton (weighted)",
                   Q(off_ends), Q(base.vnw(1)) + A.r * (-chic * i * (i + 1) / 2 + irr_sum));
    for (Row* r : {&d, &e, &f}) rows.push_back(require(*r, h2));
  }

  auto R = recursion(A.r, chic, irr.irr, Q(base.vnw(1)), Q(base.v_w), Q(base.e_w));
  for (int n = 0; n <= A.r; ++n) {
    rows.push_back(value_row(rowid::kRecursion, n, "X", "f_n", R.f[n]));
    rows.push_back(value_row(rowid::kRecursion, n, "X", "v_n", R.v[n]));
    rows.push_back(value_row(rowid::kRecursion, n, "X", "e_n", R.e[n]));
  }
  for (int i = 1; i <= A.r; ++i) {
    const Counts& cur = A.lin_counts[i];
    Row a = le_row(rowid::kRecursionBound, i, "X", "v1_w", Q(cur.vnw(1)), Q(base.vnw(1)) + R.f[i]);
    Row b = le_row(rowid::kRecursionBound, i, "X", "v_w", Q(cur.v_w), R.v[i]);
    Row c = le_row(rowid::kRecursionBound, i, "X", "e_w", Q(cur.e_w), R.e[i]);
    for (Row* r : {&a, &b, &c}) rows.push_back(require(*r, common));
  }

  {
    int ncomp = 0;
    components(X, A.gamma_S, &ncomp);
    bool boundaryless = true;
    for (auto& v : X.vertices) boundaryless = boundaryless && !v.boundary;
    bool projective = X.compact() && boundaryless && ncomp == 1 && eu.genus >= 1;
    Q inc = first_theorem_increment(eu.genus, A.r);
    Q via = global_increment(A.r, chic, 1, irr.irr[1]);
    Hyps h = {{"connected projective of genus >= 1", projective},
              {"chi(x,S) <= 0 on S", chi_ok},
              {"super-harmonic off S", within(ex.E[1], A.S)}};
    const Counts& c1 = A.lin_counts[1];
    Row a = le_row(rowid::kFirstIndexTheorem, 1, "X", "e", Q(c1.e), Q(base.e) + inc);
    Row b = le_row(rowid::kFirstIndexTheorem, 1, "X", "v", Q(c1.v), Q(base.v) + inc);
    Row c = eq_row(rowid::kFirstIndexTheorem, 1, "X", "increment against the global step", inc, via);
    for (Row* r : {&a, &b, &c}) rows.push_back(require(*r, h));
  }
  return rows;
}

std::vector<Row> partial_height_rows(const Analysis& A, int i) {
  const Complex& X = A.X;
  if (i < 1 || i > A.r) fail(ErrorKind::IndexOutOfRange, "index " + idx(i));
  std::vector<Row> rows;
  const PLFunction& H = A.H[i - 1];
  auto L = height_graph(A, i);
  View w = view_of(X, L.A);
  for (auto& D : disks_of(X))
    disk_family(rows, A, w, i, H, {rowid::kHeightDisk, rowid::kHeightDiskTotal}, D,
                {{"H_i super-harmonic on the disk", superharmonic_on(X, H, D.verts)}});
  for (auto& C : annuli_of(X)) {
    std::vector<int> inside = C.joints;
    inside.insert(inside.end(), C.tree_verts.begin(), C.tree_verts.end());
    annulus_family(rows, A, w, i, H,
                   {rowid::kHeightAnnulusSkeleton, rowid::kHeightAnnulusTrees,
                    rowid::kHeightAnnulusTotal},
                   C, {{"H_i super-harmonic on the annulus", superharmonic_on(X, H, inside)}});
  }
  std::vector<int> off;
  for (int x = 0; x < X.nv(); ++x)
    if (!A.S[x]) off.push_back(x);
  bool sh = superharmonic_on(X, H, off);
  const Counts& base = A.lin_counts[0];
  View v0 = view_of(X, A.lin_graph[0]);
  long long ends = new_ends(X, w, v0);
  Q drive = sum_over(X, H, A.S) + germ_sum(X, H);
  Q L2 = 2 * Q(kappa_lambda(A.r).lambda);
  Hyps h = {{"log-affine at infinity", true}, {"H_i super-harmonic off S", sh}};
  {
    Row a = le_row(rowid::kHeightGlobalS, i, "X", "e_w", Q(L.c.e_w), Q(base.e_w) + L2 * drive);
    Row b = le_row(rowid::kHeightGlobalS, i, "X", "v_w", Q(L.c.v_w), Q(base.v_w) + L2 * drive);
    Row c = le_row(rowid::kHeightGlobalS, i, "X", "new end points (weighted)", Q(ends),
                   A.r * drive);
    for (Row* r : {&a, &b, &c}) rows.push_back(require(*r, h));
  }
  {
    Q chic = euler_data(X).chi_c;
    Q irr = irregularity(A).irr[i];
    Q d2 = -chic * i + irr;
    Hyps h2 = h;
    h2.push_back({"chi(x,S) <= 0 on S off the boundary", chi_nonpositive(A)});
    Row a = le_row(rowid::kHeightGlobal, i, "X", "e_w", Q(L.c.e_w), Q(base.e_w) + L2 * d2);
    Row b = le_row(rowid::kHeightGlobal, i, "X", "v_w", Q(L.c.v_w), Q(base.v_w) + L2 * d2);
    Row c = le_row(rowid::kHeightGlobal, i, "X", "new end points (weighted)", Q(ends), A.r * d2);
    for (Row* r : {&a, &b, &c}) rows.push_back(require(*r, h2));
  }
  return rows;
}

std::vector<Row> gos_rows(const Analysis& A, const ExceptionalSets& ex) {
  const Complex& X = A.X;
  std::vector<Row> rows;
  if (A.r < 1) return rows;
  const int r = A.r;
  Q chic = euler_data(X).chi_c;
  auto irr = irregularity(A);
  Q chidr = chi_dR(r, chic, irr.irr[r]);
  bool spectral = true;
  for (int x = 0; x < X.nv(); ++x)
    if (X.vertices[x].boundary && A.cls[x].i_sp < r) spectral = false;
  Hyps h = {{"NL", A.flags.NL},
            {"spectral non-solvable at the boundary",
             A.flags.spectral_at_boundary && spectral},
            {"log-affine at infinity", true}};
  Row v = value_row(rowid::kDeRham, r, "X", "chi_dR", chidr);
  rows.push_back(require(v, h));

  auto L = height_graph(A, r);
  const Counts& base = A.lin_counts[0];
  Q inc = de_rham_increment(r, chidr);
  Hyps h2 = h;
  h2.push_back({"chi(x,S) <= 0 on S off the boundary", chi_nonpositive(A)});
  h2.push_back({"H_r super-harmonic off S", within(ex.E[r], A.S)});
  {
    Row a = le_row(rowid::kDeRhamBound, r, "X", "e_w", Q(L.c.e_w), Q(base.e_w) + inc);
    Row b = le_row(rowid::kDeRhamBound, r, "X", "v_w", Q(L.c.v_w), Q(base.v_w) + inc);
    Row c = le_row(rowid::kDeRhamBound, r, "X", "v1_w", Q(L.c.vnw(1)),
                   Q(base.vnw(1)) - r * chidr);
    Row d = le_row(rowid::kDeRhamTheorem, r, "X", "e", Q(L.c.e), Q(base.e) + inc);
    Row e = le_row(rowid::kDeRhamTheorem, r, "X", "v", Q(L.c.v), Q(base.v) + inc);
    for (Row* x : {&a, &b, &c, &d, &e}) rows.push_back(require(*x, h2));
    rows.push_back(eq_row(rowid::kDeRhamTheorem, r, "X", "bound against the height bound",
                          Q(base.e_w) + inc,
                          Q(base.e_w) + global_increment(r, chic, r, irr.irr[r])));
  }

  bool disk = disk_scenario(A.base);
  for (auto& d : gos_disks(A)) {
    std::string loc = X.vertices[d.vertex].id;
    Hyps hd = {{"disk with one boundary point", disk}};
    Row a = value_row(rowid::kDiskIrregularity, r, loc, "Irr_inf", d.irr_inf);
    Row b = eq_row(rowid::kDiskH1, r, loc, "h1", d.h1, -d.dH);
    Hyps hn = hd;
    hn.push_back({"NL", A.flags.NL});
    Row c = eq_row(rowid::kDiskIndex, r, loc, "h0 - h1", d.h0 - d.h1, Q(r) - d.irr_inf);
    rows.push_back(require(a, hd));
    rows.push_back(require(b, hd));
    rows.push_back(require(c, hn));
    bool reached = A.P.logR[0].vval[d.vertex] >= -X.vertices[d.vertex].depth;
    for (int i = 1; i <= r; ++i) {
      Row s = le_row(rowid::kBoundarySuperharmonic, i, loc, "ddc H_i",
                     laplacian(X, A.H[i - 1], d.vertex), Q(0));
      rows.push_back(require(s, {{"NL", A.flags.NL},
                                 {"disk with one boundary point", disk},
                                 {"first radius solvable or over-solvable here", reached}}));
    }
  }
  return rows;
}

std::vector<Row> bound_report(const Analysis& A) {
  std::vector<Row> rows;
  if (A.r < 1) return rows;
  auto ex = exceptional_sets(A);
  for (int i = 1; i <= A.r; ++i) {
    for (auto&& part : {disk_rows(A, i), annulus_rows(A, i), stepwise_rows(A, ex, i),
                        partial_height_rows(A, i)})
      rows.insert(rows.end(), part.begin(), part.end());
  }
  for (auto&& part : {global_rows(A, ex), gos_rows(A, ex)})
    rows.insert(rows.end(), part.begin(), part.end());
  sort_rows(rows);
  return rows;
}

std::vector<Row> verify_report(const Analysis& A) {
  std::vector<Row> rows;
  if (A.r < 1) return rows;
  auto ex = exceptional_sets(A);
  for (auto&& part : {verify_superharmonicity(A, ex), profile_rows(A)})
    rows.insert(rows.end(), part.begin(), part.end());
  sort_rows(rows);
  return rows;
}

}  // namespace skc
