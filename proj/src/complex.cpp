#include "skelcalc/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace skc {

namespace {

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void join(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

[[noreturn]] void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace

int Complex::vertex_index(const std::string& id) const {
  for (int i = 0; i < nv(); ++i)
    if (vertices[i].id == id) return i;
  fail(ErrorKind::UnknownVertex, "no vertex '" + id + "'");
}

int Complex::edge_index(const std::string& id) const {
  for (int i = 0; i < ne(); ++i)
    if (edges[i].id == id) return i;
  fail(ErrorKind::UnknownBranch, "no edge '" + id + "'");
}

int Complex::germ_index(const std::string& id) const {
  for (int i = 0; i < ng(); ++i)
    if (germs[i].id == id) return i;
  fail(ErrorKind::UnknownBranch, "no germ '" + id + "'");
}

bool Complex::compact() const {
  for (auto& g : germs)
    if (g.kind == GermKind::OpenBoundary) return false;
  return true;
}

std::vector<int> Complex::S() const {
  std::vector<int> out;
  for (int i = 0; i < nv(); ++i)
    if (vertices[i].in_S) out.push_back(i);
  return out;
}

void validate_complex(const Complex& X) {
  std::set<std::string> ids;
  for (auto& v : X.vertices) {
    if (v.id.empty() || !ids.insert(v.id).second)
      fail(ErrorKind::ValidationError, "duplicate or empty vertex id '" + v.id + "'");
    if (v.genus < 0) fail(ErrorKind::InvalidDecoration, v.id + ": negative genus");
    if (v.degree < 1) fail(ErrorKind::InvalidDecoration, v.id + ": degree must be positive");
    if (v.depth < 0) fail(ErrorKind::InvalidDecoration, v.id + ": negative depth");
    if (v.depth != 0 && v.boundary)
      fail(ErrorKind::InvalidDecoration, v.id + ": boundary point off the skeleton");
    if (v.depth != 0 && v.genus > 0)
      fail(ErrorKind::InvalidDecoration, v.id + ": positive genus off the skeleton");
    if (v.depth != 0 && v.in_S) fail(ErrorKind::InvalidDecoration, v.id + ": S point off the skeleton");
  }
  ids.clear();
  for (auto& e : X.edges)
    if (e.id.empty() || !ids.insert(e.id).second)
      fail(ErrorKind::ValidationError, "duplicate or empty edge id '" + e.id + "'");
  ids.clear();
  for (auto& g : X.germs)
    if (g.id.empty() || !ids.insert(g.id).second)
      fail(ErrorKind::ValidationError, "duplicate or empty germ id '" + g.id + "'");

  std::vector<int> parents(X.nv(), 0);
  for (auto& e : X.edges) {
    if (e.a < 0 || e.a >= X.nv() || e.b < 0 || e.b >= X.nv())
      fail(ErrorKind::UnknownVertex, e.id + ": bad end");
    if (e.length <= 0) fail(ErrorKind::InvalidDecoration, e.id + ": length must be positive");
    if (e.degree < 1) fail(ErrorKind::InvalidDecoration, e.id + ": degree must be positive");
    auto& A = X.vertices[e.a];
    auto& B = X.vertices[e.b];
    if (A.degree < e.degree || B.degree < e.degree)
      fail(ErrorKind::InvalidDecoration, e.id + ": end degree below edge degree");
    if (e.kind == EdgeKind::Skeleton) {
      if (A.depth != 0 || B.depth != 0)
        fail(ErrorKind::InvalidDecoration, e.id + ": skeleton edge leaves depth 0");
    } else {
      if (e.a == e.b) fail(ErrorKind::NonTreeAttachment, e.id + ": tree loop");
      if (B.depth != A.depth + e.length)
        fail(ErrorKind::InvalidDecoration, e.id + ": leaf depth != root depth + length");
      if (++parents[e.b] > 1)
        fail(ErrorKind::NonTreeAttachment, B.id + ": more than one tree edge into it");
    }
  }
  for (int x = 0; x < X.nv(); ++x)
    if (X.vertices[x].depth != 0 && parents[x] == 0)
      fail(ErrorKind::InvalidDecoration, X.vertices[x].id + ": off-skeleton vertex not on a tree");

  for (auto& g : X.germs) {
    if (g.at < 0 || g.at >= X.nv()) fail(ErrorKind::UnknownVertex, g.id + ": bad attach point");
    if (g.degree < 1) fail(ErrorKind::InvalidDecoration, g.id + ": degree must be positive");
    auto& v = X.vertices[g.at];
    if (g.kind == GermKind::OpenBoundary && v.depth != 0)
      fail(ErrorKind::InvalidDecoration, g.id + ": germ at infinity off the skeleton");
    if (g.kind == GermKind::BoundarySingular && !v.boundary)
      fail(ErrorKind::InvalidDecoration, g.id + ": boundary germ at a non-boundary point");
  }

  UF uf(X.nv());
  for (auto& e : X.edges) uf.join(e.a, e.b);
  std::vector<char> hasS(X.nv(), 0);
  for (int x = 0; x < X.nv(); ++x)
    if (X.vertices[x].in_S) hasS[uf.find(x)] = 1;
  for (int x = 0; x < X.nv(); ++x)
    if (!hasS[uf.find(x)])
      fail(ErrorKind::DisconnectedFromS, X.vertices[x].id + ": component without an S point");

  Subgraph sk = skeleton_of(X);
  for (int x = 0; x < X.nv(); ++x) {
    auto& v = X.vertices[x];
    if (v.depth != 0 || v.in_S) continue;
    if (v.genus > 0 || v.boundary)
      fail(ErrorKind::ValidationError, v.id + ": genus or boundary point outside S");
    auto info = arity_at(X, x, sk);
    if (info.arity != 2)
      fail(ErrorKind::ValidationError, v.id + ": skeleton point outside S must have arity 2");
    for (auto& b : info.branches)
      if (contains(sk, b) && branch_degree(X, b) != v.degree)
        fail(ErrorKind::ValidationError, v.id + ": degree jump outside S");
  }
}

Complex build_complex(const ComplexSpec& spec) {
  Complex X;
  X.vertices = spec.vertices;
  std::map<std::string, int> idx;
  for (int i = 0; i < X.nv(); ++i) idx.emplace(X.vertices[i].id, i);
  auto look = [&](const std::string& id, const std::string& who) {
    auto it = idx.find(id);
    if (it == idx.end()) fail(ErrorKind::UnknownVertex, who + ": no vertex '" + id + "'");
    return it->second;
  };
  for (auto& es : spec.edges) {
    Edge e;
    e.id = es.id;
    e.a = look(es.from, es.id);
    e.b = look(es.to, es.id);
    e.length = es.length;
    e.degree = es.degree;
    e.kind = es.kind;
    e.origin = X.ne();
    X.edges.push_back(e);
  }
  for (auto& gs : spec.germs) {
    Germ g;
    g.id = gs.id;
    g.at = look(gs.at, gs.id);
    g.degree = gs.degree;
    g.kind = gs.kind;
    X.germs.push_back(g);
  }
  validate_complex(X);
  return X;
}

ComplexSpec to_spec(const Complex& X) {
  ComplexSpec s;
  s.vertices = X.vertices;
  for (auto& e : X.edges)
    s.edges.push_back({e.id, X.vertices[e.a].id, X.vertices[e.b].id, e.length, e.degree, e.kind});
  for (auto& g : X.germs) s.germs.push_back({g.id, X.vertices[g.at].id, g.degree, g.kind});
  return s;
}

int branch_degree(const Complex& X, const Branch& b) {
  return b.germ ? X.germs[b.index].degree : X.edges[b.index].degree;
}

int branch_far_end(const Complex& X, const Branch& b) {
  if (b.germ) return -1;
  auto& e = X.edges[b.index];
  return b.forward ? e.b : e.a;
}

std::vector<Branch> branches_at(const Complex& X, int x) {
  if (x < 0 || x >= X.nv()) fail(ErrorKind::UnknownVertex, "vertex index out of range");
  std::vector<Branch> out;
  for (int i = 0; i < X.ne(); ++i) {
    if (X.edges[i].a == x) out.push_back({false, i, true});
    if (X.edges[i].b == x) out.push_back({false, i, false});
  }
  for (int i = 0; i < X.ng(); ++i)
    if (X.germs[i].at == x) out.push_back({true, i, true});
  return out;
}

Subgraph skeleton_of(const Complex& X) {
  Subgraph G = empty_of(X);
  for (int i = 0; i < X.nv(); ++i) G.v[i] = X.vertices[i].depth == 0;
  for (int i = 0; i < X.ne(); ++i) G.e[i] = X.edges[i].kind == EdgeKind::Skeleton;
  for (int i = 0; i < X.ng(); ++i) G.g[i] = X.germs[i].kind == GermKind::OpenBoundary;
  return G;
}

Subgraph whole_of(const Complex& X) {
  return {std::vector<char>(X.nv(), 1), std::vector<char>(X.ne(), 1),
          std::vector<char>(X.ng(), 1)};
}

Subgraph empty_of(const Complex& X) {
  return {std::vector<char>(X.nv(), 0), std::vector<char>(X.ne(), 0),
          std::vector<char>(X.ng(), 0)};
}

bool contains(const Subgraph& G, const Branch& b) { return b.germ ? G.g[b.index] : G.e[b.index]; }

bool subset_of(const Subgraph& A, const Subgraph& B) {
  for (size_t i = 0; i < A.v.size(); ++i)
    if (A.v[i] && !B.v[i]) return false;
  for (size_t i = 0; i < A.e.size(); ++i)
    if (A.e[i] && !B.e[i]) return false;
  for (size_t i = 0; i < A.g.size(); ++i)
    if (A.g[i] && !B.g[i]) return false;
  return true;
}

Subgraph unite(const Subgraph& A, const Subgraph& B) {
  Subgraph C = A;
  for (size_t i = 0; i < C.v.size(); ++i) C.v[i] |= B.v[i];
  for (size_t i = 0; i < C.e.size(); ++i) C.e[i] |= B.e[i];
  for (size_t i = 0; i < C.g.size(); ++i) C.g[i] |= B.g[i];
  return C;
}

ArityInfo arity_at(const Complex& X, int x, const Subgraph& G) {
  ArityInfo info;
  info.branches = branches_at(X, x);
  for (auto& b : info.branches) {
    bool singular = b.germ && X.germs[b.index].kind == GermKind::BoundarySingular;
    if (singular) {
      ++info.arity;
      continue;
    }
    if (contains(G, b)) {
      ++info.arity;
      info.N += branch_degree(X, b);
    }
  }
  return info;
}

Q chi_point(const Complex& X, int x, const Subgraph& G) {
  if (x < 0 || x >= X.nv()) fail(ErrorKind::UnknownVertex, "vertex index out of range");
  auto& v = X.vertices[x];
  return Q(2 * v.degree - 2 * v.genus) - Q(arity_at(X, x, G).N);
}

std::vector<int> components(const Complex& X, const Subgraph& G, int* count) {
  UF uf(X.nv());
  for (int i = 0; i < X.ne(); ++i)
    if (G.e[i] && G.v[X.edges[i].a] && G.v[X.edges[i].b]) uf.join(X.edges[i].a, X.edges[i].b);
  std::vector<int> label(X.nv(), -1);
  std::map<int, int> ids;
  for (int x = 0; x < X.nv(); ++x) {
    if (!G.v[x]) continue;
    auto [it, fresh] = ids.emplace(uf.find(x), static_cast<int>(ids.size()));
    label[x] = it->second;
  }
  if (count) *count = static_cast<int>(ids.size());
  return label;
}

EulerData euler_data(const Complex& X) {
  Subgraph sk = skeleton_of(X);
  int ncomp = 0;
  components(X, sk, &ncomp);
  EulerData d;
  long long V = 0, E = 0, g = 0;
  for (int x = 0; x < X.nv(); ++x)
    if (sk.v[x]) ++V, g += X.vertices[x].genus;
  for (int i = 0; i < X.ne(); ++i)
    if (sk.e[i]) ++E;
  for (auto& gm : X.germs)
    if (gm.kind == GermKind::OpenBoundary) d.n_infty += gm.degree;
  d.chi_top = V - E;
  d.genus = ncomp - d.chi_top + g;
  d.chi_c = 2LL * ncomp - 2 * d.genus - d.n_infty;
  return d;
}

std::vector<int> arities(const AGraph& G) {
  std::vector<int> a(G.nv(), 0);
  for (auto& e : G.edges) {
    ++a[e.a];
    if (e.b >= 0) ++a[e.b];
  }
  return a;
}

Counts graph_counts(const AGraph& G) {
  Counts c;
  c.v = G.nv();
  c.e = static_cast<long long>(G.edges.size());
  auto ar = arities(G);
  int maxa = 0;
  for (int a : ar) maxa = std::max(maxa, a);
  c.v_n.assign(maxa + 1, 0);
  c.v_nw.assign(maxa + 1, 0);
  for (int i = 0; i < G.nv(); ++i) {
    c.v_w += G.vdeg[i];
    ++c.v_n[ar[i]];
    c.v_nw[ar[i]] += G.vdeg[i];
  }
  for (auto& e : G.edges) {
    c.e_w += e.deg;
    if (e.b < 0) ++c.e_open;
  }
  return c;
}

long long card_w(const AGraph& G, const std::vector<int>& vs) {
  long long s = 0;
  for (int v : vs) s += G.vdeg[v];
  return s;
}

AGraph quotient(const Complex& X, const Subgraph& G, const std::vector<char>& marked) {
  const int ne = X.ne();
  UF uf(ne + X.ng());
  auto item = [&](const Branch& b) { return b.germ ? ne + b.index : b.index; };
  for (int x = 0; x < X.nv(); ++x) {
    if (!G.v[x] || marked[x]) continue;
    std::vector<Branch> in;
    for (auto& b : branches_at(X, x))
      if (contains(G, b)) in.push_back(b);
    if (in.size() != 2)
      fail(ErrorKind::NotAPath, X.vertices[x].id + ": unmarked point of arity " +
                                    std::to_string(in.size()));
    if (branch_degree(X, in[0]) != branch_degree(X, in[1]))
      fail(ErrorKind::NotAPath, X.vertices[x].id + ": unmarked degree jump");
    uf.join(item(in[0]), item(in[1]));
  }

  AGraph A;
  std::vector<int> amap(X.nv(), -1);
  for (int x = 0; x < X.nv(); ++x)
    if (G.v[x] && marked[x]) {
      amap[x] = A.nv();
      A.vdeg.push_back(X.vertices[x].degree);
      A.vmap.push_back(x);
    }

  struct Cls {
    std::vector<int> ends;
    int germs = 0, deg = 0, first = -1;
  };
  std::map<int, Cls> cls;
  for (int i = 0; i < ne; ++i) {
    if (!G.e[i]) continue;
    auto& e = X.edges[i];
    if (!G.v[e.a] || !G.v[e.b]) fail(ErrorKind::NotAPath, e.id + ": edge without its ends");
    auto& c = cls[uf.find(i)];
    if (c.first < 0) c.first = i, c.deg = e.degree;
    if (marked[e.a]) c.ends.push_back(amap[e.a]);
    if (marked[e.b]) c.ends.push_back(amap[e.b]);
  }
  for (int i = 0; i < X.ng(); ++i) {
    if (!G.g[i]) continue;
    if (!G.v[X.germs[i].at]) fail(ErrorKind::NotAPath, X.germs[i].id + ": germ without its point");
    auto& c = cls[uf.find(ne + i)];
    if (c.first < 0) c.first = ne + i, c.deg = X.germs[i].degree;
    ++c.germs;
    if (marked[X.germs[i].at]) c.ends.push_back(amap[X.germs[i].at]);
  }
  std::vector<std::pair<int, AEdge>> out;
  for (auto& [root, c] : cls) {
    std::sort(c.ends.begin(), c.ends.end());
    if (c.ends.size() == 2 && c.germs == 0)
      out.push_back({c.first, {c.ends[0], c.ends[1], c.deg}});
    else if (c.ends.size() == 1 && c.germs == 1)
      out.push_back({c.first, {c.ends[0], -1, c.deg}});
    else
      fail(ErrorKind::NotAPath, "a piece of the graph minus its marked points is not a segment");
  }
  std::sort(out.begin(), out.end(), [](auto& l, auto& r) { return l.first < r.first; });
  for (auto& [k, e] : out) A.edges.push_back(e);
  return A;
}

std::vector<char> canonical_vertices(const Complex& X, const Subgraph& G,
                                     const std::vector<char>& S) {
  std::vector<char> m(X.nv(), 0);
  for (int x = 0; x < X.nv(); ++x) {
    if (!G.v[x]) continue;
    if (S[x]) m[x] = 1;
    auto info = arity_at(X, x, G);
    if (info.arity != 2) m[x] = 1;
    for (auto& b : info.branches)
      if (contains(G, b) && branch_degree(X, b) != X.vertices[x].degree) m[x] = 1;
  }
  int n = 0;
  auto comp = components(X, G, &n);
  std::vector<char> seen(n, 0);
  for (int x = 0; x < X.nv(); ++x)
    if (comp[x] >= 0 && m[x]) seen[comp[x]] = 1;
  for (int x = 0; x < X.nv(); ++x)
    if (comp[x] >= 0 && !seen[comp[x]]) m[x] = 1, seen[comp[x]] = 1;
  return m;
}

PartitionResult verify_partition_identity(const Complex& X, const std::vector<int>& Sprime) {
  Subgraph sk = skeleton_of(X);
  std::vector<char> in(X.nv(), 0);
  for (int x : Sprime) {
    if (x < 0 || x >= X.nv()) fail(ErrorKind::UnknownVertex, "vertex index out of range");
    if (!sk.v[x]) fail(ErrorKind::CoreNotContained, X.vertices[x].id + " is off the skeleton");
    in[x] = 1;
  }
  for (int x = 0; x < X.nv(); ++x) {
    if (!sk.v[x] || in[x]) continue;
    auto& v = X.vertices[x];
    auto info = arity_at(X, x, sk);
    bool jump = false;
    for (auto& b : info.branches)
      if (contains(sk, b) && branch_degree(X, b) != v.degree) jump = true;
    if (v.genus > 0 || v.boundary || info.arity != 2 || jump)
      fail(ErrorKind::CoreNotContained, v.id + " belongs to the core but is missing");
  }
  int n = 0;
  auto comp = components(X, sk, &n);
  std::vector<char> hit(n, 0);
  for (int x : Sprime) hit[comp[x]] = 1;
  for (int c = 0; c < n; ++c)
    if (!hit[c]) fail(ErrorKind::CoreNotContained, "a skeleton component has no chosen point");
  PartitionResult r;
  for (int x : Sprime) r.lhs += chi_point(X, x, sk);
  r.rhs = Q(euler_data(X).chi_c);
  r.pass = r.lhs == r.rhs;
  return r;
}

OpenStats open_stats(const Complex& X, const OpenSub& U) {
  OpenStats s;
  const int nv = X.nv(), ne = X.ne();
  UF uf(nv + ne);
  std::vector<char> used(nv + ne, 0);
  for (int x = 0; x < nv; ++x)
    if (U.v[x]) used[x] = 1;
  for (int i = 0; i < ne; ++i) {
    if (!U.e[i]) continue;
    auto& e = X.edges[i];
    used[nv + i] = 1;
    if (U.v[e.a]) uf.join(nv + i, e.a);
    if (U.v[e.b]) uf.join(nv + i, e.b);
    s.n_infty += static_cast<long long>(e.degree) * ((U.v[e.a] ? 0 : 1) + (U.v[e.b] ? 0 : 1));
  }
  for (int i = 0; i < X.ng(); ++i)
    if (U.g[i]) s.n_infty += X.germs[i].degree;
  std::map<int, long long> chi_top, genus;
  for (int x = 0; x < nv; ++x)
    if (U.v[x]) chi_top[uf.find(x)] += 1, genus[uf.find(x)] += X.vertices[x].genus;
  for (int i = 0; i < ne; ++i) {
    if (!U.e[i]) continue;
    auto& e = X.edges[i];
    int root = uf.find(nv + i);
    if (U.v[e.a] && U.v[e.b])
      chi_top[root] -= 1;
    else if (!U.v[e.a] && !U.v[e.b])
      chi_top[root] += 1;  // a bare open segment is contractible
    else
      chi_top[root] += 0;
  }
  for (auto& [root, ct] : chi_top) {
    long long g = 1 - ct + genus[root];
    s.chi_c += 2 - 2 * g;
  }
  s.chi_c -= s.n_infty;
  return s;
}

UnionStats union_stats(const Complex& X, const OpenSub& U, const OpenSub& V) {
  Subgraph sk = skeleton_of(X);
  auto check = [&](const OpenSub& W, const char* name) {
    if (W.v.size() != static_cast<size_t>(X.nv()) || W.e.size() != static_cast<size_t>(X.ne()) ||
        W.g.size() != static_cast<size_t>(X.ng()))
      fail(ErrorKind::NotOpenSubcomplex, std::string(name) + ": mask size mismatch");
    for (int x = 0; x < X.nv(); ++x)
      if (W.v[x] && !sk.v[x]) fail(ErrorKind::NotOpenSubcomplex, std::string(name) + ": off-skeleton point");
    for (int i = 0; i < X.ne(); ++i) {
      auto& e = X.edges[i];
      if (W.e[i] && !sk.e[i]) fail(ErrorKind::NotOpenSubcomplex, std::string(name) + ": tree edge");
      if (sk.e[i] && !W.e[i] && (W.v[e.a] || W.v[e.b]))
        fail(ErrorKind::NotOpenSubcomplex, std::string(name) + ": point without its open star");
    }
    for (int i = 0; i < X.ng(); ++i) {
      bool open = sk.g[i];
      if (W.g[i] && (!open || !W.v[X.germs[i].at]))
        fail(ErrorKind::NotOpenSubcomplex, std::string(name) + ": stray germ");
      if (open && W.v[X.germs[i].at] && !W.g[i])
        fail(ErrorKind::NotOpenSubcomplex, std::string(name) + ": point without its germ");
    }
  };
  check(U, "U");
  check(V, "V");
  OpenSub cup = U, cap = U;
  for (size_t i = 0; i < U.v.size(); ++i) cup.v[i] = U.v[i] || V.v[i], cap.v[i] = U.v[i] && V.v[i];
  for (size_t i = 0; i < U.e.size(); ++i) cup.e[i] = U.e[i] || V.e[i], cap.e[i] = U.e[i] && V.e[i];
  for (size_t i = 0; i < U.g.size(); ++i) cup.g[i] = U.g[i] || V.g[i], cap.g[i] = U.g[i] && V.g[i];
  UnionStats r;
  r.U = open_stats(X, U);
  r.V = open_stats(X, V);
  r.cup = open_stats(X, cup);
  r.cap = open_stats(X, cap);
  r.residual_n = r.cup.n_infty - r.U.n_infty - r.V.n_infty + r.cap.n_infty;
  r.residual_chi = r.cup.chi_c - r.U.chi_c - r.V.chi_c + r.cap.chi_c;
  return r;
}

TreeCheck tree_identity_check(const AGraph& T) {
  for (auto& e : T.edges)
    if (e.b < 0) fail(ErrorKind::NotATree, "half-open edge in a tree");
  if (T.nv() == 0) fail(ErrorKind::NotATree, "empty graph");
  if (T.edges.empty()) {
    if (T.nv() == 1) fail(ErrorKind::DegenerateSingleVertex, "tree without edges");
    fail(ErrorKind::NotATree, "disconnected");
  }
  UF uf(T.nv());
  for (auto& e : T.edges) uf.join(e.a, e.b);
  for (int i = 0; i < T.nv(); ++i)
    if (uf.find(i) != uf.find(0)) fail(ErrorKind::NotATree, "disconnected");
  TreeCheck c;
  c.v = T.nv();
  c.e = static_cast<long long>(T.edges.size());
  if (c.e != c.v - 1) fail(ErrorKind::NotATree, "has a cycle");
  for (int a : arities(T)) c.v1 += a == 1, c.v2 += a == 2;
  c.e_plus_1_eq_v = c.e + 1 == c.v;
  long long rhs = 2 * c.v1 + c.v2 - 2;
  c.bound_holds = c.v <= rhs;
  c.equality = c.v == rhs;
  return c;
}

TreeBound prop318_bound(const AGraph& G, const std::vector<char>& in_v0,
                        const std::vector<char>& in_e0) {
  const int n = G.nv();
  for (size_t i = 0; i < G.edges.size(); ++i) {
    if (!in_e0[i]) continue;
    auto& e = G.edges[i];
    if (!in_v0[e.a] || (e.b >= 0 && !in_v0[e.b]))
      fail(ErrorKind::ComponentNotTree, "an edge of the subgraph leaves its vertex set");
  }
  UF uf(n);
  for (size_t i = 0; i < G.edges.size(); ++i) {
    auto& e = G.edges[i];
    if (in_e0[i]) continue;
    bool a_out = !in_v0[e.a], b_out = e.b >= 0 && !in_v0[e.b];
    if (e.b < 0 && !in_v0[e.a]) fail(ErrorKind::ComponentNotTree, "unbounded piece outside the subgraph");
    if (e.b < 0 || (!a_out && !b_out))
      fail(ErrorKind::ComponentNotTree, "open edge between subgraph points");
    if (a_out && b_out) uf.join(e.a, e.b);
  }
  std::map<int, long long> nvert, inner, roots;
  for (int x = 0; x < n; ++x)
    if (!in_v0[x]) ++nvert[uf.find(x)];
  for (size_t i = 0; i < G.edges.size(); ++i) {
    auto& e = G.edges[i];
    if (in_e0[i]) continue;
    bool a_out = !in_v0[e.a], b_out = !in_v0[e.b];
    if (a_out && b_out)
      ++inner[uf.find(e.a)];
    else
      ++roots[uf.find(a_out ? e.a : e.b)];
  }
  for (auto& [c, k] : nvert)
    if (roots[c] != 1 || inner[c] != k - 1)
      fail(ErrorKind::ComponentNotTree, "a piece outside the subgraph is not a rooted tree");
  auto ar = arities(G);
  long long v0 = 0, e0 = 0, v1 = 0, v2 = 0;
  for (int x = 0; x < n; ++x) {
    if (in_v0[x]) {
      ++v0;
      continue;
    }
    v1 += ar[x] == 1;
    v2 += ar[x] == 2;
  }
  for (size_t i = 0; i < G.edges.size(); ++i) e0 += in_e0[i] ? 1 : 0;
  long long comps = static_cast<long long>(nvert.size());
  TreeBound t;
  t.v_bound = v0 + 2 * v1 + v2 - comps;
  t.e_bound = e0 + 2 * v1 + v2 - comps;
  t.observed_v = n;
  t.observed_e = static_cast<long long>(G.edges.size());
  t.pass = t.observed_v <= t.v_bound && t.observed_e <= t.e_bound;
  return t;
}

Complex subdivide(const Complex& X, int edge, const Q& pos, const std::string& new_id) {
  if (edge < 0 || edge >= X.ne()) fail(ErrorKind::UnknownBranch, "edge index out of range");
  Complex Y = X;
  Edge e = X.edges[edge];
  if (pos <= 0 || pos >= e.length) fail(ErrorKind::InvalidDecoration, "subdivision point not interior");
  Vertex v;
  v.id = new_id;
  v.degree = e.degree;
  v.depth = e.kind == EdgeKind::Tree ? X.vertices[e.a].depth + pos : Q(0);
  int nvx = Y.nv();
  Y.vertices.push_back(v);
  Edge first = e, second = e;
  first.b = nvx;
  first.length = pos;
  second.a = nvx;
  second.length = e.length - pos;
  second.offset = e.offset + pos;
  second.id = e.id + "@" + qstr(e.offset + pos);
  std::set<std::string> ids;
  for (auto& f : Y.edges) ids.insert(f.id);
  while (ids.count(second.id)) second.id += "'";
  Y.edges[edge] = first;
  Y.edges.push_back(second);
  return Y;
}

Complex normalize_triangulation(const Complex& X) {
  Complex Y = X;
  auto projective = [&](const Complex& Z) {
    Subgraph sk = skeleton_of(Z);
    for (int x = 0; x < Z.nv(); ++x) {
      auto& v = Z.vertices[x];
      if (!sk.v[x] || v.genus > 0 || v.boundary) continue;
      auto info = arity_at(Z, x, sk);
      if (info.arity == 0)
        fail(ErrorKind::GenusZeroProjectiveComponent, v.id + ": genus-0 component with nothing left");
    }
  };
  projective(Y);
  for (;;) {
    Subgraph sk = skeleton_of(Y);
    bool changed = false;
    for (int s = 0; s < Y.nv() && !changed; ++s) {
      auto& sv = Y.vertices[s];
      if (!sv.in_S || sv.genus > 0 || sv.boundary || sv.depth != 0) continue;
      auto info = arity_at(Y, s, sk);
      if (info.arity != 1) continue;
      Branch b;
      for (auto& c : info.branches)
        if (contains(sk, c) || c.germ) b = c;
      if (b.germ) continue;
      // Walk to the next S point through arity-2 joints.
      std::vector<std::pair<int, bool>> chain;  // edge, walked a->b
      std::vector<int> pts{s};
      Branch cur = b;
      bool to_germ = false;
      for (;;) {
        chain.push_back({cur.index, cur.forward});
        int u = branch_far_end(Y, cur);
        pts.push_back(u);
        if (Y.vertices[u].in_S) break;
        Branch next;
        bool found = false;
        for (auto& c : branches_at(Y, u)) {
          if (!contains(sk, c)) continue;
          if (!c.germ && c.index == cur.index && c.forward != cur.forward) continue;
          next = c;
          found = true;
        }
        if (!found || next.germ) {
          to_germ = true;
          break;
        }
        cur = next;
      }
      if (to_germ) continue;
      // pts = s, j1, ..., u ; re-root the chain at u.
      std::vector<Q> newdepth(Y.nv(), -1);
      Q acc = 0;
      for (int k = static_cast<int>(chain.size()) - 1; k >= 0; --k) {
        auto [ei, fwd] = chain[k];
        Edge& e = Y.edges[ei];
        int near = pts[k + 1], far = pts[k];
        acc += e.length;
        e.kind = EdgeKind::Tree;
        e.a = near;
        e.b = far;
        newdepth[far] = acc;
        (void)fwd;
      }
      // shift hanging trees by the new depth of their root
      std::vector<int> order;
      for (int x : pts)
        if (newdepth[x] >= 0) order.push_back(x);
      for (size_t k = 0; k < order.size(); ++k) {
        int x = order[k];
        Q old = Y.vertices[x].depth;
        Y.vertices[x].depth = newdepth[x];
        Y.vertices[x].in_S = false;
        // descendants in trees rooted at x (excluding the re-rooted chain)
        std::vector<int> stack{x};
        while (!stack.empty()) {
          int y = stack.back();
          stack.pop_back();
          for (auto& e : Y.edges) {
            if (e.kind != EdgeKind::Tree || e.a != y) continue;
            if (newdepth[e.b] >= 0) continue;
            Y.vertices[e.b].depth += newdepth[x] - old;
            stack.push_back(e.b);
          }
        }
      }
      changed = true;
    }
    if (!changed) break;
    projective(Y);
  }
  validate_complex(Y);
  return Y;
}

}  // namespace skc
