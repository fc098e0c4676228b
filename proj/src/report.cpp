#include "skelcalc/report.hpp"

#include <algorithm>
#include <sstream>

namespace skc {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inapplicable: return "inapplicable";
  }
  return "?";
}

namespace {

Row make(std::string eq, int index, std::string locus, std::string quantity, const Q& observed,
         const Q& bound, const char* rel, bool ok, bool gate, std::string why_not) {
  Row r;
  r.eq = std::move(eq);
  r.index = index;
  r.locus = std::move(locus);
  r.quantity = std::move(quantity);
  r.rel = rel;
  r.bound = bound;
  r.observed = observed;
  if (!gate) {
    r.status = Status::Inapplicable;
    r.note = std::move(why_not);
  } else {
    r.status = ok ? Status::Pass : Status::Fail;
  }
  return r;
}

}  // namespace

Row le_row(std::string eq, int index, std::string locus, std::string quantity, const Q& observed,
           const Q& bound, bool gate, std::string why_not) {
  return make(std::move(eq), index, std::move(locus), std::move(quantity), observed, bound, "<=",
              observed <= bound, gate, std::move(why_not));
}

Row ge_row(std::string eq, int index, std::string locus, std::string quantity, const Q& observed,
           const Q& bound, bool gate, std::string why_not) {
  return make(std::move(eq), index, std::move(locus), std::move(quantity), observed, bound, ">=",
              observed >= bound, gate, std::move(why_not));
}

Row eq_row(std::string eq, int index, std::string locus, std::string quantity, const Q& observed,
           const Q& expected, bool gate, std::string why_not) {
  return make(std::move(eq), index, std::move(locus), std::move(quantity), observed, expected, "=",
              observed == expected, gate, std::move(why_not));
}

Row value_row(std::string eq, int index, std::string locus, std::string quantity, const Q& value,
              std::string note) {
  Row r;
  r.eq = std::move(eq);
  r.index = index;
  r.locus = std::move(locus);
  r.quantity = std::move(quantity);
  r.rel = "value";
  r.bound = value;
  r.note = std::move(note);
  return r;
}

Row& require(Row& r, std::vector<std::pair<std::string, bool>> hyp) {
  std::string missing;
  for (auto& [name, ok] : hyp)
    if (!ok) missing += (missing.empty() ? "" : ", ") + name;
  r.hyp = std::move(hyp);
  if (!missing.empty()) {
    r.status = Status::Inapplicable;
    r.note = "needs " + missing;
  }
  return r;
}

static std::vector<long> parts(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, '.')) out.push_back(tok.empty() ? 0 : std::stol(tok));
  return out;
}

bool eq_less(const std::string& a, const std::string& b) { return parts(a) < parts(b); }

void sort_rows(std::vector<Row>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    if (x.eq != y.eq) return eq_less(x.eq, y.eq);
    if (x.index != y.index) return x.index < y.index;
    return x.locus < y.locus;
  });
}

std::vector<Row> filter_rows(const std::vector<Row>& rows, const std::vector<std::string>& eqs,
                             int index) {
  std::vector<Row> out;
  for (auto& r : rows) {
    if (!eqs.empty() && std::find(eqs.begin(), eqs.end(), r.eq) == eqs.end()) continue;
    if (index > 0 && r.index != index && r.index != 0) continue;
    out.push_back(r);
  }
  return out;
}

int exit_code(const std::vector<Row>& rows) {
  bool any_pass = false;
  for (auto& r : rows) {
    if (r.status == Status::Fail) return 1;
    if (r.status == Status::Pass) any_pass = true;
  }
  return any_pass ? 0 : 2;
}

}  // namespace skc
