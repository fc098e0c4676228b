// Brute-force recomputation. Deliberately shares nothing with the library beyond the
// data types: no branches_at, no laplacian, no quotient, no eval.

#include "skelcalc/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace skc {
namespace {

struct Node {
  std::string id;
  int genus = 0, deg = 1;
  bool bd = false, S = false;
  Q depth = 0;
};
struct Piece {
  std::string id;
  int a = -1, b = -1;
  Q len;
  int deg = 1;
  bool tree = false;
};
struct Gm {
  std::string id;
  int at = -1, deg = 1;
  bool open = true;
};

// One function on the pieces: value per node, slope a->b per piece, germ slopes.
struct Fn {
  std::vector<Q> val, sl, gs;
};

struct World {
  std::vector<Node> n;
  std::vector<Piece> p;
  std::vector<Gm> g;
  int r = 0;
  std::vector<Fn> R, H;  // [i-1]
  std::vector<int> up;   // tree piece above each node, -1 on the skeleton
};

Q interp(const std::vector<std::pair<Q, Q>>& pts, const Q& t) {
  for (size_t k = 0; k + 1 < pts.size(); ++k) {
    const auto& [t0, v0] = pts[k];
    const auto& [t1, v1] = pts[k + 1];
    if (t0 <= t && t <= t1) return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
  }
  return pts.back().second;
}

World build(const Instance& I) {
  World W;
  const Complex& X = I.X;
  W.r = I.P.rank;
  for (auto& v : X.vertices) W.n.push_back({v.id, v.genus, v.degree, v.boundary, v.in_S, v.depth});
  std::vector<std::vector<Q>> cuts(X.ne());
  for (int e = 0; e < X.ne(); ++e) {
    std::set<Q> c;
    for (auto& F : I.P.logR) {
      auto& pts = F.edge[e].pts;
      for (size_t k = 1; k + 1 < pts.size(); ++k) {
        Q s0 = (pts[k].second - pts[k - 1].second) / (pts[k].first - pts[k - 1].first);
        Q s1 = (pts[k + 1].second - pts[k].second) / (pts[k + 1].first - pts[k].first);
        if (s0 != s1) c.insert(pts[k].first);
      }
    }
    cuts[e].assign(c.begin(), c.end());
  }
  std::vector<std::vector<int>> cut_node(X.ne());
  for (int e = 0; e < X.ne(); ++e) {
    auto& E = X.edges[e];
    for (auto& c : cuts[e]) {
      Node nd;
      nd.id = E.id + "@" + qstr(E.offset + c);
      nd.deg = E.degree;
      nd.depth = E.kind == EdgeKind::Tree ? X.vertices[E.a].depth + c : Q(0);
      cut_node[e].push_back(static_cast<int>(W.n.size()));
      W.n.push_back(nd);
    }
  }
  struct Span {
    int e;
    Q s, t;
  };
  std::vector<Span> spans;
  for (int e = 0; e < X.ne(); ++e) {
    auto& E = X.edges[e];
    std::vector<Q> pos{Q(0)};
    pos.insert(pos.end(), cuts[e].begin(), cuts[e].end());
    pos.push_back(E.length);
    std::vector<int> ends{E.a};
    ends.insert(ends.end(), cut_node[e].begin(), cut_node[e].end());
    ends.push_back(E.b);
    for (size_t k = 0; k + 1 < pos.size(); ++k) {
      Piece q;
      q.id = k == 0 ? E.id : E.id + "@" + qstr(E.offset + pos[k]);
      q.a = ends[k];
      q.b = ends[k + 1];
      q.len = pos[k + 1] - pos[k];
      q.deg = E.degree;
      q.tree = E.kind == EdgeKind::Tree;
      W.p.push_back(q);
      spans.push_back({e, pos[k], pos[k + 1]});
    }
  }
  for (auto& gm : X.germs) W.g.push_back({gm.id, gm.at, gm.degree, gm.kind == GermKind::OpenBoundary});
  for (auto& F : I.P.logR) {
    Fn f;
    f.val.assign(W.n.size(), Q(0));
    for (int x = 0; x < X.nv(); ++x) f.val[x] = F.vval[x];
    for (int e = 0; e < X.ne(); ++e)
      for (size_t k = 0; k < cuts[e].size(); ++k) f.val[cut_node[e][k]] = interp(F.edge[e].pts, cuts[e][k]);
    for (auto& sp : spans) {
      auto& pts = F.edge[sp.e].pts;
      f.sl.push_back((interp(pts, sp.t) - interp(pts, sp.s)) / (sp.t - sp.s));
    }
    f.gs = F.germ;
    W.R.push_back(f);
  }
  for (int i = 0; i < W.r; ++i) {
    Fn h = W.R[0];
    for (int j = 1; j <= i; ++j) {
      for (size_t x = 0; x < h.val.size(); ++x) h.val[x] += W.R[j].val[x];
      for (size_t q = 0; q < h.sl.size(); ++q) h.sl[q] += W.R[j].sl[q];
      for (size_t q = 0; q < h.gs.size(); ++q) h.gs[q] += W.R[j].gs[q];
    }
    W.H.push_back(h);
  }
  W.up.assign(W.n.size(), -1);
  for (size_t q = 0; q < W.p.size(); ++q)
    if (W.p[q].tree) W.up[W.p[q].b] = static_cast<int>(q);
  return W;
}

int nn(const World& W) { return static_cast<int>(W.n.size()); }
int np(const World& W) { return static_cast<int>(W.p.size()); }
int ng(const World& W) { return static_cast<int>(W.g.size()); }

Q lap(const World& W, const Fn& f, int x) {
  Q s = 0;
  for (int q = 0; q < np(W); ++q) {
    if (W.p[q].a == x) s += W.p[q].deg * f.sl[q];
    if (W.p[q].b == x) s -= W.p[q].deg * f.sl[q];
  }
  for (int k = 0; k < ng(W); ++k)
    if (W.g[k].at == x) s += W.g[k].deg * f.gs[k];
  return s;
}

// Piece and node membership; open germs always belong.
struct Sub {
  std::vector<char> v, p;
};

Sub skeleton(const World& W) {
  Sub G;
  G.v.assign(nn(W), 0);
  G.p.assign(np(W), 0);
  for (int x = 0; x < nn(W); ++x) G.v[x] = W.n[x].depth == 0;
  for (int q = 0; q < np(W); ++q) G.p[q] = !W.p[q].tree;
  return G;
}

// Tree pieces below (and including) q.
std::vector<int> below(const World& W, int q) {
  std::vector<int> out{q};
  for (size_t k = 0; k < out.size(); ++k)
    for (int c = 0; c < np(W); ++c)
      if (W.p[c].tree && W.p[c].a == W.p[out[k]].b) out.push_back(c);
  return out;
}

Sub control(const World& W, const Fn& f) {
  Sub G = skeleton(W);
  for (int q = 0; q < np(W); ++q) {
    if (!W.p[q].tree) continue;
    for (int c : below(W, q))
      if (f.sl[c] != 0) G.p[q] = 1;
    if (G.p[q]) G.v[W.p[q].a] = G.v[W.p[q].b] = 1;
  }
  return G;
}

Sub unite(const Sub& A, const Sub& B) {
  Sub C = A;
  for (size_t k = 0; k < C.v.size(); ++k) C.v[k] |= B.v[k];
  for (size_t k = 0; k < C.p.size(); ++k) C.p[k] |= B.p[k];
  return C;
}

// A branch end at x inside G: piece q leaving through a (out = +1) or b (out = -1), or germ k.
struct End {
  bool germ;
  int k, out;
};

std::vector<End> ends_in(const World& W, const Sub& G, int x) {
  std::vector<End> e;
  for (int q = 0; q < np(W); ++q) {
    if (!G.p[q]) continue;
    if (W.p[q].a == x) e.push_back({false, q, 1});
    if (W.p[q].b == x) e.push_back({false, q, -1});
  }
  for (int k = 0; k < ng(W); ++k)
    if (W.g[k].open && W.g[k].at == x) e.push_back({true, k, 1});
  return e;
}

Q out_slope(const World& W, const Fn& f, const End& e) {
  (void)W;
  return e.germ ? f.gs[e.k] : e.out * f.sl[e.k];
}

int end_deg(const World& W, const End& e) { return e.germ ? W.g[e.k].deg : W.p[e.k].deg; }

struct Find {
  std::vector<int> up;
  explicit Find(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int root(int x) { return up[x] == x ? x : up[x] = root(up[x]); }
  void join(int a, int b) { up[root(a)] = root(b); }
};

std::vector<char> marks(const World& W, const Sub& G, const std::vector<const Fn*>& fs, bool canon) {
  std::vector<char> m(nn(W), 0);
  for (int x = 0; x < nn(W); ++x) {
    if (!G.v[x]) continue;
    if (W.n[x].S) m[x] = 1;
    if (!canon) continue;
    auto e = ends_in(W, G, x);
    int sing = 0;
    for (auto& gm : W.g) sing += !gm.open && gm.at == x;
    if (static_cast<int>(e.size()) + sing != 2) m[x] = 1;
    for (auto& b : e)
      if (end_deg(W, b) != W.n[x].deg) m[x] = 1;
    if (!m[x] && e.size() == 2)
      for (auto* f : fs)
        if (out_slope(W, *f, e[0]) + out_slope(W, *f, e[1]) != 0) m[x] = 1;
  }
  if (!canon) return m;
  Find F(nn(W));
  for (int q = 0; q < np(W); ++q)
    if (G.p[q] && G.v[W.p[q].a] && G.v[W.p[q].b]) F.join(W.p[q].a, W.p[q].b);
  std::set<int> hit;
  for (int x = 0; x < nn(W); ++x)
    if (G.v[x] && m[x]) hit.insert(F.root(x));
  for (int x = 0; x < nn(W); ++x)
    if (G.v[x] && !hit.count(F.root(x))) m[x] = 1, hit.insert(F.root(x));
  return m;
}

struct Level {
  Sub G;
  std::vector<char> m;
  std::vector<int> arity;  // -1 off the marks
  long long v = 0, e = 0, eo = 0, vw = 0, ew = 0;
  std::vector<long long> vn, vnw;
  // per quotient edge: degree and the marked nodes it touches
  std::vector<std::pair<int, std::set<int>>> qedges;
  long long vnw1() const { return vnw.size() > 1 ? vnw[1] : 0; }
};

Level level(const World& W, const Sub& G, const std::vector<char>& m) {
  Level L;
  L.G = G;
  L.m = m;
  // items: pieces 0..np-1, germs np..
  int P = np(W);
  Find F(P + ng(W));
  std::vector<int> items;
  for (int q = 0; q < P; ++q)
    if (G.p[q]) items.push_back(q);
  for (int k = 0; k < ng(W); ++k)
    if (W.g[k].open) items.push_back(P + k);
  auto touches = [&](int it, int x) {
    if (it >= P) return W.g[it - P].at == x;
    return W.p[it].a == x || W.p[it].b == x;
  };
  for (int x = 0; x < nn(W); ++x) {
    if (!G.v[x] || m[x]) continue;
    int first = -1;
    for (int it : items)
      if (touches(it, x)) {
        if (first < 0) first = it;
        else F.join(first, it);
      }
  }
  std::map<int, std::pair<int, std::set<int>>> cls;
  std::map<int, bool> open;
  for (int it : items) {
    auto& c = cls[F.root(it)];
    c.first = it >= P ? W.g[it - P].deg : W.p[it].deg;
    if (it >= P) {
      open[F.root(it)] = true;
      if (m[W.g[it - P].at]) c.second.insert(W.g[it - P].at);
    } else {
      if (m[W.p[it].a]) c.second.insert(W.p[it].a);
      if (m[W.p[it].b]) c.second.insert(W.p[it].b);
    }
  }
  for (auto& [root, c] : cls) {
    L.qedges.push_back(c);
    ++L.e;
    L.ew += c.first;
    if (open[root]) ++L.eo;
  }
  L.arity.assign(nn(W), -1);
  int maxa = 0;
  for (int x = 0; x < nn(W); ++x) {
    if (!m[x]) continue;
    int a = 0;
    for (int it : items) {
      if (it >= P) a += W.g[it - P].at == x;
      else a += (W.p[it].a == x) + (W.p[it].b == x);
    }
    L.arity[x] = a;
    maxa = std::max(maxa, a);
    ++L.v;
    L.vw += W.n[x].deg;
  }
  L.vn.assign(maxa + 1, 0);
  L.vnw.assign(maxa + 1, 0);
  for (int x = 0; x < nn(W); ++x)
    if (m[x]) ++L.vn[L.arity[x]], L.vnw[L.arity[x]] += W.n[x].deg;
  return L;
}

std::string list(std::vector<long long> v) {
  while (v.size() > 1 && v.back() == 0) v.pop_back();
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string counts_str(const Level& L) {
  return "v=" + std::to_string(L.v) + " e=" + std::to_string(L.e) + " eo=" + std::to_string(L.eo) +
         " vw=" + std::to_string(L.vw) + " ew=" + std::to_string(L.ew) + " vn=" + list(L.vn) +
         " vnw=" + list(L.vnw);
}

struct Consts {
  long long kappa, lambda;
};
Consts consts(int r) {
  long long R = r;
  long long k = R * (R - 1);
  if (k < 1) k = 1;
  long long l = R * (R - 1 > 2 ? R - 1 : 2);
  return {k, l};
}

// Rows are written as "observed|bound" (observed "-" for recorded values).
void put_row(Facts& f, const std::string& eq, int i, const std::string& loc, const std::string& q,
             const Q* obs, const Q& bound) {
  f["row " + eq + " " + std::to_string(i) + " " + loc + " " + q] =
      (obs ? qstr(*obs) : std::string("-")) + "|" + qstr(bound);
}
void put_le(Facts& f, const std::string& eq, int i, const std::string& loc, const std::string& q,
            const Q& obs, const Q& bound) {
  put_row(f, eq, i, loc, q, &obs, bound);
}
void put_value(Facts& f, const std::string& eq, int i, const std::string& loc, const std::string& q,
               const Q& v) {
  put_row(f, eq, i, loc, q, nullptr, v);
}

// Region rows are compared as multisets since loci name pieces.
using Bag = std::map<std::string, std::vector<std::string>>;
void bag_put(Bag& b, const std::string& eq, int i, const std::string& q, const Q& obs, const Q& bound) {
  b["rows " + eq + " " + std::to_string(i) + " " + q].push_back(qstr(obs) + "|" + qstr(bound));
}

struct Tally {
  long long v = 0, v1 = 0, v2 = 0, e = 0;
};
Tally tally(const World& W, const Level& L, const std::vector<int>& nodes) {
  Tally t;
  for (int x : nodes) {
    if (!L.m[x]) continue;
    long long d = W.n[x].deg;
    t.v += d;
    if (L.arity[x] == 1) t.v1 += d;
    if (L.arity[x] == 2) t.v2 += d;
    t.e += W.p[W.up[x]].deg;
  }
  return t;
}

void disk_bag(Bag& b, const World& W, const Level& L, const Fn& H, int i, const std::string& id1,
              const std::string& id2) {
  Consts K = consts(W.r);
  for (int q = 0; q < np(W); ++q) {
    if (!W.p[q].tree || !W.n[W.p[q].a].S) continue;
    std::vector<int> nodes;
    std::set<int> inD;
    for (int c : below(W, q)) nodes.push_back(W.p[c].b), inD.insert(W.p[c].b);
    Tally t = tally(W, L, nodes);
    long long ew = 0;
    for (auto& [d, touch] : L.qedges) {
      bool in = false;
      for (int x : touch) in = in || inD.count(x);
      if (in) ew += d;
    }
    Q sigma = H.sl[q], deg = W.p[q].deg;
    bag_put(b, id1, i, "v1_w/r + v2_w/kappa", Q(t.v1) / W.r + Q(t.v2) / K.kappa, deg * sigma);
    bag_put(b, id1, i, "sigma", sigma, Q(0));
    bag_put(b, id1, i, "sigma = 0 iff no marked points", Q((sigma == 0) == (t.v == 0) ? 1 : 0), Q(1));
    bag_put(b, id2, i, "v_w", Q(t.v), deg * K.lambda * sigma);
    bag_put(b, id2, i, "e_w - v_w", Q(ew - t.v), Q(0));
  }
}

struct Chain {
  int start = -1, end = -1, end_germ = -1;
  std::vector<End> steps;  // ends leaving start / joints
  std::vector<int> joints;
  End back{};
  std::vector<int> tverts, tpieces;
};

std::vector<Chain> chains(const World& W) {
  Sub sk = skeleton(W);
  std::vector<char> usedp(np(W), 0), usedg(ng(W), 0);
  std::vector<Chain> out;
  for (int u = 0; u < nn(W); ++u) {
    if (!W.n[u].S) continue;
    for (auto b0 : ends_in(W, sk, u)) {
      if (b0.germ ? usedg[b0.k] : usedp[b0.k]) continue;
      Chain C;
      C.start = u;
      End b = b0;
      for (;;) {
        C.steps.push_back(b);
        if (b.germ) {
          usedg[b.k] = 1;
          C.end_germ = b.k;
          break;
        }
        usedp[b.k] = 1;
        int x = b.out > 0 ? W.p[b.k].b : W.p[b.k].a;
        End in{false, b.k, -b.out};
        if (W.n[x].S) {
          C.end = x;
          C.back = in;
          break;
        }
        C.joints.push_back(x);
        End next{};
        for (auto& c : ends_in(W, sk, x))
          if (!(c.germ == in.germ && c.k == in.k && c.out == in.out)) next = c;
        b = next;
      }
      for (int j : C.joints)
        for (int q = 0; q < np(W); ++q)
          if (W.p[q].tree && W.p[q].a == j)
            for (int c : below(W, q)) C.tpieces.push_back(c), C.tverts.push_back(W.p[c].b);
      out.push_back(C);
    }
  }
  return out;
}

Q at_infinity(const Fn& f, int k) { return -f.gs[k]; }

void annulus_bag(Bag& b, const World& W, const Level& L, const Fn& H, int i,
                 const std::string& sk_id, const std::string& tr_id, const std::string& tot_id,
                 const Sub* tot, const std::vector<const Fn*>& upto, const std::string& concave_id) {
  Consts K = consts(W.r);
  for (auto& C : chains(W)) {
    if (!concave_id.empty() && !C.joints.empty()) {
      Q worst;
      for (size_t k = 0; k < C.joints.size(); ++k) {
        End back{false, C.steps[k].k, -C.steps[k].out};
        Q s = end_deg(W, C.steps[k + 1]) * (out_slope(W, H, back) + out_slope(W, H, C.steps[k + 1]));
        if (k == 0 || s > worst) worst = s;
      }
      bag_put(b, concave_id, i, "largest skeleton slope sum at a joint", worst, Q(0));
    }
    Q sm = out_slope(W, H, C.steps.front());
    Q sp = C.end_germ >= 0 ? at_infinity(H, C.end_germ) : out_slope(W, H, C.back);
    Q deg = end_deg(W, C.steps.front());
    Q sum = sm + sp;
    long long cv = 0, ce = end_deg(W, C.steps.front());
    for (size_t k = 0; k < C.joints.size(); ++k) {
      if (!L.m[C.joints[k]]) continue;
      cv += W.n[C.joints[k]].deg;
      ce += end_deg(W, C.steps[k + 1]);
    }
    Tally t = tally(W, L, C.tverts);
    bag_put(b, sk_id, i, "v_w on the annulus skeleton", Q(cv), deg * K.kappa * sum);
    bag_put(b, sk_id, i, "e_w - deg - v_w on the annulus skeleton", Q(ce) - deg - Q(cv), Q(0));
    bag_put(b, tr_id, i, "v1_w/r + v2_w/kappa off the annulus skeleton",
            Q(t.v1) / W.r + Q(t.v2) / K.kappa, deg * sum);
    bag_put(b, tot_id, i, "v_w", Q(cv + t.v), deg * 2 * K.lambda * sum);
    bag_put(b, tot_id, i, "e_w", Q(ce + t.e), deg * (2 * K.lambda * sum + 1));
    if (tot) {
      (void)upto;
      long long stray = 0;
      for (int q : C.tpieces) stray += tot->p[q];
      bag_put(b, tot_id, i, "tree edges of the cumulative graph in the annulus", Q(stray), Q(0));
    }
  }
}

}  // namespace

Facts oracle_facts(const Instance& I) {
  Facts f;
  World W = build(I);
  const int r = W.r;
  Sub sk = skeleton(W);

  // Euler data straight from counting.
  long long V = 0, E = 0, gsum = 0, ninf = 0;
  for (auto& x : W.n)
    if (x.depth == 0) ++V, gsum += x.genus;
  for (auto& q : W.p) E += !q.tree;
  for (auto& gm : W.g)
    if (gm.open) ninf += gm.deg;
  Find comp(nn(W));
  for (auto& q : W.p)
    if (!q.tree) comp.join(q.a, q.b);
  std::set<int> roots;
  for (int x = 0; x < nn(W); ++x)
    if (W.n[x].depth == 0) roots.insert(comp.root(x));
  long long ncomp = static_cast<long long>(roots.size());
  long long genus = ncomp - (V - E) + gsum;
  long long chic = 2 * ncomp - 2 * genus - ninf;
  f["euler chi_c"] = std::to_string(chic);
  f["euler genus"] = std::to_string(genus);
  if (r < 1) return f;

  auto chi_at = [&](int x) {
    long long N = 0;
    for (auto& e : ends_in(W, sk, x)) N += end_deg(W, e);
    return Q(2LL * W.n[x].deg - 2LL * W.n[x].genus - N);
  };

  for (int i = 1; i <= r; ++i)
    for (int x = 0; x < nn(W); ++x) f["lap H" + std::to_string(i) + " " + W.n[x].id] = qstr(lap(W, W.H[i - 1], x));
  std::vector<int> isp(nn(W), 0);
  for (int x = 0; x < nn(W); ++x) {
    int sp = 0, sol = 0;
    for (int i = 1; i <= r; ++i) {
      Q v = W.R[i - 1].val[x], t = -W.n[x].depth;
      if (v < t) sp = i;
      if (v <= t) sol = i;
    }
    isp[x] = sp;
    f["cls " + W.n[x].id] = std::to_string(sp) + "/" + std::to_string(sol);
  }

  // Levels of the cumulative graphs.
  std::vector<Sub> gam{sk}, tot{sk};
  std::vector<Level> lv;
  std::vector<char> Smask(nn(W), 0);
  for (int x = 0; x < nn(W); ++x) Smask[x] = W.n[x].S;
  lv.push_back(level(W, sk, marks(W, sk, {}, false)));
  std::vector<const Fn*> fs;
  for (int i = 1; i <= r; ++i) {
    gam.push_back(control(W, W.R[i - 1]));
    tot.push_back(unite(tot.back(), gam.back()));
    fs.push_back(&W.R[i - 1]);
    lv.push_back(level(W, tot.back(), marks(W, tot.back(), fs, true)));
  }
  std::vector<Level> hl(r + 1);
  for (int i = 1; i <= r; ++i) {
    Sub G = control(W, W.H[i - 1]);
    hl[i] = level(W, G, marks(W, G, {&W.H[i - 1]}, true));
  }
  for (int i = 0; i <= r; ++i) {
    std::string s = std::to_string(i);
    f["lin" + s + " counts"] = counts_str(lv[i]);
    std::vector<std::string> ids, pcs;
    for (int x = 0; x < nn(W); ++x)
      if (lv[i].m[x]) ids.push_back(W.n[x].id);
    for (int q = 0; q < np(W); ++q)
      if (tot[i].p[q]) pcs.push_back(W.p[q].id);
    std::sort(ids.begin(), ids.end());
    std::sort(pcs.begin(), pcs.end());
    std::string a, b;
    for (auto& x : ids) a += x + ",";
    for (auto& x : pcs) b += x + ",";
    f["lin" + s + " marks"] = a;
    f["tot" + s + " pieces"] = b;
    if (i >= 1) f["height" + s + " counts"] = counts_str(hl[i]);
  }

  // Laplacian inside X: boundary-singular germs point out of it.
  auto lap_in = [&](const Fn& H, int x) {
    Q s = lap(W, H, x);
    for (int k = 0; k < ng(W); ++k)
      if (!W.g[k].open && W.g[k].at == x) s -= W.g[k].deg * H.gs[k];
    return s;
  };

  // Irregularity.
  std::vector<Q> irr(r + 1, Q(0));
  std::vector<std::vector<std::pair<int, Q>>> delta(r + 1);
  for (int i = 1; i <= r; ++i) {
    for (int x = 0; x < nn(W); ++x) {
      if (!W.n[x].bd) continue;
      Q d = lap_in(W.H[i - 1], x) + chi_at(x) * i;
      delta[i].push_back({x, d});
      irr[i] += d;
    }
    for (int k = 0; k < ng(W); ++k)
      if (W.g[k].open) irr[i] += W.g[k].deg * at_infinity(W.H[i - 1], k);
    f["irr " + std::to_string(i)] = qstr(irr[i]);
  }

  Consts K = consts(r);
  Q L2 = 2 * Q(K.lambda);
  bool chi_ok = true;
  for (int x = 0; x < nn(W); ++x)
    if (W.n[x].S && !W.n[x].bd && chi_at(x) > 0) chi_ok = false;
  (void)chi_ok;
  auto sum_lap = [&](const Fn& H, const std::vector<char>& mask) {
    Q s = 0;
    for (int x = 0; x < nn(W); ++x)
      if (mask[x]) s += lap_in(H, x);
    return s;
  };
  auto germ_total = [&](const Fn& H) {
    Q s = 0;
    for (int k = 0; k < ng(W); ++k)
      if (W.g[k].open) s += W.g[k].deg * at_infinity(H, k);
    return s;
  };
  auto fresh_ends = [&](const Level& cur, const Level& prev) {
    long long n = 0;
    for (int x = 0; x < nn(W); ++x)
      if (cur.arity[x] == 1 && prev.arity[x] != 1 && prev.arity[x] != 0) n += W.n[x].deg;
    return n;
  };

  // Exceptional sets.
  std::vector<std::vector<char>> Ex(r + 1, std::vector<char>(nn(W), 0)), Cx = Ex;
  for (int i = 1; i <= r; ++i) {
    for (int x = 0; x < nn(W); ++x) Ex[i][x] = lap(W, W.H[i - 1], x) > 0;
    Cx[i] = Cx[i - 1];
    if (i < 2) continue;
    Sub GH = control(W, W.H[i - 1]);
    for (int x = 0; x < nn(W); ++x) {
      if (W.n[x].depth == 0) continue;
      if (W.R[i - 1].val[x] != -W.n[x].depth) continue;
      if (!gam[i].v[x]) continue;
      int a = static_cast<int>(ends_in(W, gam[i], x).size());
      for (auto& gm : W.g) a += !gm.open && gm.at == x;
      if (a != 1 || !tot[i - 1].v[x] || !GH.v[x]) continue;
      Cx[i][x] = 1;
    }
  }

  // Stepwise rows with W = S + E_i.
  for (int i = 1; i <= r; ++i) {
    const Fn& H = W.H[i - 1];
    const Level &cur = lv[i], &prev = lv[i - 1];
    std::vector<char> Wm(nn(W), 0);
    for (int x = 0; x < nn(W); ++x) Wm[x] = Smask[x] || Ex[i][x];
    Q dz = 0;
    for (int x = 0; x < nn(W); ++x)
      if (Ex[i][x] && !prev.m[x]) dz += W.n[x].deg;
    Q sw = sum_lap(H, Wm), ss = sum_lap(H, Smask), sg = germ_total(H);
    Q ends = fresh_ends(cur, prev);
    auto triple = [&](const std::string& id, const Q& extra, const Q& drive) {
      put_le(f, id, i, "X", "e_w", Q(cur.ew), Q(prev.ew) + extra + L2 * drive);
      put_le(f, id, i, "X", "v_w", Q(cur.vw), Q(prev.vw) + extra + L2 * drive);
      put_le(f, id, i, "X", "new end points (weighted)", ends, r * drive);
    };
    triple(rowid::kStepCompact, dz, sw);
    triple(rowid::kStepGerms, dz, sw + sg);
    triple(rowid::kStepSuperharmonic, 0, ss + sg);
    if (i >= 2) {
      long long cw = 0;
      for (int x = 0; x < nn(W); ++x)
        if (Cx[i - 1][x]) cw += W.n[x].deg;
      Q k = Q(cw) + prev.vnw1();
      Q drive = (i - 1) * k + ss + sg;
      put_le(f, rowid::kStepGeneral, i, "X", "e_w", Q(cur.ew), Q(prev.ew) + k + L2 * drive);
      put_le(f, rowid::kStepGeneral, i, "X", "v_w", Q(cur.vw), Q(prev.vw) + k + L2 * drive);
      put_le(f, rowid::kStepGeneral, i, "X", "new end points (weighted)", ends, r * drive);
    }
  }

  // Global rows.
  const Level& base = lv[0];
  Q isum = 0;
  for (int i = 1; i <= r; ++i) {
    put_value(f, rowid::kIrregularity, i, "X", "Irr_i", irr[i]);
    for (auto& [x, d] : delta[i]) put_value(f, rowid::kIrregularity, i, W.n[x].id, "Delta_i", d);
    const Level &cur = lv[i], &prev = lv[i - 1];
    Q inc = L2 * (-Q(chic) * i + irr[i]);
    put_le(f, rowid::kGlobalStep, i, "X", "e_w", Q(cur.ew), Q(prev.ew) + inc);
    put_le(f, rowid::kGlobalStep, i, "X", "v_w", Q(cur.vw), Q(prev.vw) + inc);
    put_le(f, rowid::kGlobalStep, i, "X", "new end points (weighted)", Q(fresh_ends(cur, prev)),
           r * (-Q(chic) * i + irr[i]));
    isum += irr[i];
    Q big = Q(K.lambda) * (-Q(chic) * i * (i + 1) + 2 * isum);
    long long off = 0;
    for (int x = 0; x < nn(W); ++x)
      if (cur.arity[x] == 1 && W.n[x].depth != 0) off += W.n[x].deg;
    put_le(f, rowid::kGlobalCumulative, i, "X", "e_w", Q(cur.ew), Q(base.ew) + big);
    put_le(f, rowid::kGlobalCumulative, i, "X", "v_w", Q(cur.vw), Q(base.vw) + big);
    put_le(f, rowid::kGlobalCumulative, i, "X", "end points off the skeleton (weighted)", Q(off),
           Q(base.vnw1()) + r * (-Q(chic) * i * (i + 1) / 2 + isum));
  }
  {
    // f_{n+1} = f_n - r chi (n+1) + r n (f_1+..+f_n) + r Irr_{n+1}, and the same drive for v, e
    std::vector<Q> F{Q(base.vnw1())}, Vv{Q(base.vw)}, Ee{Q(base.ew)};
    for (int n = 0; n < r; ++n) {
      Q acc = 0;
      for (int k = 1; k <= n; ++k) acc += F[k];
      F.push_back(F[n] - Q(r) * chic * (n + 1) + Q(r) * n * acc + Q(r) * irr[n + 1]);
      Q lam = K.lambda;
      Q step = -2 * lam * chic * (n + 1) + (2 * lam * n + 1) * acc + 2 * lam * irr[n + 1];
      Vv.push_back(Vv[n] + step);
      Ee.push_back(Ee[n] + step);
    }
    for (int n = 0; n <= r; ++n) {
      put_value(f, rowid::kRecursion, n, "X", "f_n", F[n]);
      put_value(f, rowid::kRecursion, n, "X", "v_n", Vv[n]);
      put_value(f, rowid::kRecursion, n, "X", "e_n", Ee[n]);
    }
    for (int i = 1; i <= r; ++i) {
      put_le(f, rowid::kRecursionBound, i, "X", "v1_w", Q(lv[i].vnw1()), Q(base.vnw1()) + F[i]);
      put_le(f, rowid::kRecursionBound, i, "X", "v_w", Q(lv[i].vw), Vv[i]);
      put_le(f, rowid::kRecursionBound, i, "X", "e_w", Q(lv[i].ew), Ee[i]);
    }
  }
  {
    Q inc = Q(4) * (genus - 1) * r * (r - 1 > 2 ? r - 1 : 2);
    put_le(f, rowid::kFirstIndexTheorem, 1, "X", "e", Q(lv[1].e), Q(base.e) + inc);
    put_le(f, rowid::kFirstIndexTheorem, 1, "X", "v", Q(lv[1].v), Q(base.v) + inc);
    put_le(f, rowid::kFirstIndexTheorem, 1, "X", "increment against the global step", inc,
           L2 * (-Q(chic) + irr[1]));
  }

  // Heights.
  for (int i = 1; i <= r; ++i) {
    const Fn& H = W.H[i - 1];
    const Level& L = hl[i];
    Q ends = fresh_ends(L, base);
    Q drive = sum_lap(H, Smask) + germ_total(H);
    put_le(f, rowid::kHeightGlobalS, i, "X", "e_w", Q(L.ew), Q(base.ew) + L2 * drive);
    put_le(f, rowid::kHeightGlobalS, i, "X", "v_w", Q(L.vw), Q(base.vw) + L2 * drive);
    put_le(f, rowid::kHeightGlobalS, i, "X", "new end points (weighted)", ends, r * drive);
    Q d2 = -Q(chic) * i + irr[i];
    put_le(f, rowid::kHeightGlobal, i, "X", "e_w", Q(L.ew), Q(base.ew) + L2 * d2);
    put_le(f, rowid::kHeightGlobal, i, "X", "v_w", Q(L.vw), Q(base.vw) + L2 * d2);
    put_le(f, rowid::kHeightGlobal, i, "X", "new end points (weighted)", ends, r * d2);
  }

  // de Rham and the disk at a singular germ.
  {
    Q chidr = Q(r) * chic - irr[r];
    put_value(f, rowid::kDeRham, r, "X", "chi_dR", chidr);
    Q inc = -L2 * chidr;
    const Level& L = hl[r];
    put_le(f, rowid::kDeRhamBound, r, "X", "e_w", Q(L.ew), Q(base.ew) + inc);
    put_le(f, rowid::kDeRhamBound, r, "X", "v_w", Q(L.vw), Q(base.vw) + inc);
    put_le(f, rowid::kDeRhamBound, r, "X", "v1_w", Q(L.vnw1()), Q(base.vnw1()) - r * chidr);
    put_le(f, rowid::kDeRhamTheorem, r, "X", "e", Q(L.e), Q(base.e) + inc);
    put_le(f, rowid::kDeRhamTheorem, r, "X", "v", Q(L.v), Q(base.v) + inc);
    put_le(f, rowid::kDeRhamTheorem, r, "X", "bound against the height bound", Q(base.ew) + inc,
           Q(base.ew) + L2 * (-Q(chic) * r + irr[r]));
    for (int k = 0; k < ng(W); ++k) {
      if (W.g[k].open) continue;
      int x = W.g[k].at;
      Q dH = W.H[r - 1].gs[k], h0 = 0;
      for (auto& R : W.R)
        if (R.val[x] == 0 && R.gs[k] == 0) h0 += 1;
      Q irr_inf = Q(r) - dH - h0;
      const std::string& loc = W.n[x].id;
      put_value(f, rowid::kDiskIrregularity, r, loc, "Irr_inf", irr_inf);
      put_le(f, rowid::kDiskH1, r, loc, "h1", -dH, -dH);
      put_le(f, rowid::kDiskIndex, r, loc, "h0 - h1", h0 + dH, Q(r) - irr_inf);
      for (int i = 1; i <= r; ++i) put_le(f, rowid::kBoundarySuperharmonic, i, loc, "ddc H_i", lap(W, W.H[i - 1], x), Q(0));
    }
  }

  // Disks and annuli.
  Bag bag;
  for (int i = 1; i <= r; ++i) {
    const Fn& H = W.H[i - 1];
    if (i == 1) disk_bag(bag, W, lv[1], H, 1, rowid::kDiskFirst, rowid::kDiskFirstTotal);
    else disk_bag(bag, W, lv[i], H, i, rowid::kDiskLater, rowid::kDiskLaterTotal);
    std::vector<const Fn*> upto;
    for (int j = 0; j < i; ++j) upto.push_back(&W.R[j]);
    annulus_bag(bag, W, lv[i], H, i, rowid::kAnnulusSkeleton, rowid::kAnnulusTrees, rowid::kAnnulusTotal,
                &tot[i], upto, rowid::kAnnulusConcave);
    disk_bag(bag, W, hl[i], H, i, rowid::kHeightDisk, rowid::kHeightDiskTotal);
    annulus_bag(bag, W, hl[i], H, i, rowid::kHeightAnnulusSkeleton, rowid::kHeightAnnulusTrees,
                rowid::kHeightAnnulusTotal, nullptr, upto, "");
  }
  for (auto& [k, v] : bag) {
    auto s = v;
    std::sort(s.begin(), s.end());
    std::string out;
    for (auto& x : s) out += x + ";";
    f[k] = out;
  }
  return f;
}

}  // namespace skc
