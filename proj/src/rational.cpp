#include "skelcalc/rational.hpp"

#include "skelcalc/error.hpp"

#include <cctype>

namespace skc {

std::string qstr(const Q& q) {
  if (is_int(q)) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

static bool all_digits(const std::string& s, size_t from) {
  if (from >= s.size()) return false;
  for (size_t i = from; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Q parse_q(const std::string& s) {
  auto slash = s.find('/');
  std::string p = s.substr(0, slash);
  size_t start = (!p.empty() && (p[0] == '-' || p[0] == '+')) ? 1 : 0;
  if (!all_digits(p, start)) throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
  Z n(p[0] == '+' ? p.substr(1) : p);
  if (slash == std::string::npos) return Q(n);
  std::string q = s.substr(slash + 1);
  if (!all_digits(q, 0)) throw Error(ErrorKind::ParseError, "bad rational '" + s + "'");
  Z d(q);
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  return Q(n, d);
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidDecoration: return "InvalidDecoration";
    case ErrorKind::DisconnectedFromS: return "DisconnectedFromS";
    case ErrorKind::NonTreeAttachment: return "NonTreeAttachment";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::UnknownBranch: return "UnknownBranch";
    case ErrorKind::NotAPath: return "NotAPath";
    case ErrorKind::CoreNotContained: return "CoreNotContained";
    case ErrorKind::NotOpenSubcomplex: return "NotOpenSubcomplex";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::DegenerateSingleVertex: return "DegenerateSingleVertex";
    case ErrorKind::ComponentNotTree: return "ComponentNotTree";
    case ErrorKind::GenusZeroProjectiveComponent: return "GenusZeroProjectiveComponent";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidRank: return "InvalidRank";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::InvalidW: return "InvalidW";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InfeasibleParams: return "InfeasibleParams";
    case ErrorKind::GammaDoesNotContainSkeleton: return "GammaDoesNotContainSkeleton";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Error";
}

}  // namespace skc
