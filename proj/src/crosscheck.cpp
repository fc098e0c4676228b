#include "skelcalc/bounds.hpp"
#include "skelcalc/oracle.hpp"

#include <algorithm>
#include <random>

namespace skc {
namespace {

std::string list(std::vector<long long> v) {
  while (v.size() > 1 && v.back() == 0) v.pop_back();
  if (v.empty()) v.push_back(0);
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string counts_str(const Counts& c) {
  return "v=" + std::to_string(c.v) + " e=" + std::to_string(c.e) + " eo=" + std::to_string(c.e_open) +
         " vw=" + std::to_string(c.v_w) + " ew=" + std::to_string(c.e_w) + " vn=" + list(c.v_n) +
         " vnw=" + list(c.v_nw);
}

bool region(const std::string& locus) {
  return locus.rfind("disk ", 0) == 0 || locus.rfind("annulus ", 0) == 0;
}

}  // namespace

Facts pipeline_facts(const Analysis& A) {
  Facts f;
  const Complex& X = A.X;
  auto eu = euler_data(X);
  f["euler chi_c"] = std::to_string(eu.chi_c);
  f["euler genus"] = std::to_string(eu.genus);
  if (A.r < 1) return f;
  for (int i = 1; i <= A.r; ++i)
    for (int x = 0; x < X.nv(); ++x)
      f["lap H" + std::to_string(i) + " " + X.vertices[x].id] = qstr(laplacian(X, A.H[i - 1], x));
  for (int x = 0; x < X.nv(); ++x)
    f["cls " + X.vertices[x].id] = std::to_string(A.cls[x].i_sp) + "/" + std::to_string(A.cls[x].i_sol);
  for (int i = 0; i <= A.r; ++i) {
    std::string s = std::to_string(i);
    f["lin" + s + " counts"] = counts_str(A.lin_counts[i]);
    std::vector<std::string> ids, pcs;
    for (int x = 0; x < X.nv(); ++x)
      if (A.lin[i][x]) ids.push_back(X.vertices[x].id);
    for (int e = 0; e < X.ne(); ++e)
      if (A.tot[i].e[e]) pcs.push_back(X.edges[e].id);
    std::sort(ids.begin(), ids.end());
    std::sort(pcs.begin(), pcs.end());
    std::string a, b;
    for (auto& x : ids) a += x + ",";
    for (auto& x : pcs) b += x + ",";
    f["lin" + s + " marks"] = a;
    f["tot" + s + " pieces"] = b;
    if (i >= 1) {
      const PLFunction& H = A.H[i - 1];
      f["height" + s + " counts"] = counts_str(lin_of(X, A.S, controlling_of(X, H), {&H}).c);
    }
  }
  auto irr = irregularity(A);
  for (int i = 1; i <= A.r; ++i) f["irr " + std::to_string(i)] = qstr(irr.irr[i]);

  std::map<std::string, std::vector<std::string>> bag;
  for (auto& row : bound_report(A)) {
    std::string obs = row.observed ? qstr(*row.observed) : std::string("-");
    if (region(row.locus)) {
      bag["rows " + row.eq + " " + std::to_string(row.index) + " " + row.quantity].push_back(
          obs + "|" + qstr(row.bound));
    } else {
      f["row " + row.eq + " " + std::to_string(row.index) + " " + row.locus + " " + row.quantity] =
          obs + "|" + qstr(row.bound);
    }
  }
  for (auto& [k, v] : bag) {
    std::sort(v.begin(), v.end());
    std::string out;
    for (auto& x : v) out += x + ";";
    f[k] = out;
  }
  return f;
}

std::vector<std::string> diff_facts(const Facts& pipeline, const Facts& oracle) {
  std::vector<std::string> d;
  for (auto& [k, v] : pipeline) {
    auto it = oracle.find(k);
    if (it == oracle.end()) d.push_back(k + ": pipeline " + v + ", oracle has nothing");
    else if (it->second != v) d.push_back(k + ": pipeline " + v + ", oracle " + it->second);
  }
  for (auto& [k, v] : oracle)
    if (!pipeline.count(k)) d.push_back(k + ": oracle " + v + ", pipeline has nothing");
  return d;
}

std::vector<std::string> oracle_verify(const Instance& I) {
  return diff_facts(pipeline_facts(analyze(I)), oracle_facts(I));
}

MutationRun mutation_run(const std::vector<Instance>& pool, int count, std::uint64_t seed) {
  MutationRun run;
  if (pool.empty()) return run;
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return n <= 0 ? 0 : static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  const int kinds = 12;
  for (int k = 0; k < count; ++k) {
    const Instance& I = pool[pick(static_cast<int>(pool.size()))];
    Analysis A = analyze(I);
    if (A.r < 1) continue;
    Facts truth = oracle_facts(I);
    int kind = k % kinds;
    int i = 1 + pick(A.r);
    int lvl = pick(A.r + 1);
    Counts& c = A.lin_counts[lvl];
    std::string name;
    switch (kind) {
      case 0: c.v += 1, name = "v"; break;
      case 1: c.e += 1, name = "e"; break;
      case 2: c.v_w += 1, name = "v_w"; break;
      case 3: c.e_w += 1, name = "e_w"; break;
      case 4: c.e_open += 1, name = "open edges"; break;
      case 5:
        if (c.v_n.size() < 2) c.v_n.resize(2, 0);
        c.v_n[1] += 1, name = "ends";
        break;
      case 6:
        if (c.v_nw.size() < 2) c.v_nw.resize(2, 0);
        c.v_nw[1] += 1, name = "weighted ends";
        break;
      case 7:
        if (c.v_nw.size() < 3) c.v_nw.resize(3, 0);
        c.v_nw[2] += 1, name = "weighted arity-2 marks";
        break;
      case 8: {
        int x = pick(A.X.nv());
        A.lin[lvl][x] = !A.lin[lvl][x];
        name = "mark flip at " + A.X.vertices[x].id;
        break;
      }
      case 9: {
        if (A.X.ne() == 0) {
          A.lin_counts[lvl].v += 1;
          name = "v (no edges)";
          break;
        }
        int e = pick(A.X.ne());
        A.tot[lvl].e[e] = !A.tot[lvl].e[e];
        name = "edge flip at " + A.X.edges[e].id;
        break;
      }
      case 10: {
        PLFunction& H = A.H[i - 1];
        if (A.X.ne() > 0) {
          int e = pick(A.X.ne());
          H.edge[e].pts.back().second += 1;
          name = "slope of H_" + std::to_string(i) + " on " + A.X.edges[e].id;
        } else if (A.X.ng() > 0) {
          H.germ[pick(A.X.ng())] += 1;
          name = "germ slope of H_" + std::to_string(i);
        } else {
          A.cls[0].i_sp += 1;
          name = "spectral index";
        }
        break;
      }
      default: {
        std::vector<int> sk;
        for (int x = 0; x < A.X.nv(); ++x)
          if (A.X.on_skeleton(x)) sk.push_back(x);
        int x = sk[pick(static_cast<int>(sk.size()))];
        if (rng() % 2) {
          A.X.vertices[x].genus += 1;
          name = "genus at " + A.X.vertices[x].id;
        } else {
          A.cls[x].i_sp = (A.cls[x].i_sp + 1) % (A.r + 1);
          name = "spectral index at " + A.X.vertices[x].id;
        }
      }
    }
    ++run.total;
    bool killed = false;
    try {
      killed = !diff_facts(pipeline_facts(A), truth).empty();
    } catch (const Error&) {
      killed = true;  // the corrupted pipeline fell over, which is detection too
    }
    if (killed) ++run.killed;
    else run.survivors.push_back((I.label.empty() ? "instance" : I.label) + ": " + name);
  }
  return run;
}

}  // namespace skc
