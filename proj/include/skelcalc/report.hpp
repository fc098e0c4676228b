#pragma once

#include "skelcalc/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skc {

enum class Status { Pass, Fail, Inapplicable };
const char* status_name(Status s);

// One checked inequality (or recorded value). `eq` is the public row id used by
// --equations; `bound` is the right-hand side and `observed` the measured side.
struct Row {
  std::string eq;
  int index = 0;
  std::string locus;
  std::string quantity;
  std::string rel = "<=";  // "<=", ">=" or "=" between observed and bound
  Q bound = 0;
  std::optional<Q> observed;
  Status status = Status::Pass;
  std::string note;
  bool equality_expected = false;
  // Named hypotheses; a row only passes or fails when all of them hold.
  std::vector<std::pair<std::string, bool>> hyp;
};

// Attaches hypotheses and closes the row when one of them is false.
Row& require(Row& r, std::vector<std::pair<std::string, bool>> hyp);

// observed <= bound, or inapplicable with a reason when the gate is closed.
Row le_row(std::string eq, int index, std::string locus, std::string quantity, const Q& observed,
           const Q& bound, bool gate = true, std::string why_not = {});
Row ge_row(std::string eq, int index, std::string locus, std::string quantity, const Q& observed,
           const Q& bound, bool gate = true, std::string why_not = {});
Row eq_row(std::string eq, int index, std::string locus, std::string quantity, const Q& observed,
           const Q& expected, bool gate = true, std::string why_not = {});
// Informational row: records a value, always passes.
Row value_row(std::string eq, int index, std::string locus, std::string quantity, const Q& value,
              std::string note = {});

// Dotted numeric comparison of row ids ("2.9" < "2.10" < "2.11").
bool eq_less(const std::string& a, const std::string& b);
void sort_rows(std::vector<Row>& rows);
std::vector<Row> filter_rows(const std::vector<Row>& rows, const std::vector<std::string>& eqs,
                             int index);

// 0 all pass, 1 some fail, 2 nothing applicable.
int exit_code(const std::vector<Row>& rows);

// Public row ids. These strings are report keys; nothing else depends on them.
namespace rowid {
inline const std::string kLaplaceAtSkeleton = "2.27";
inline const std::string kHeightOffExceptional = "2.33";
inline const std::string kFirstRadiusOffSkeleton = "2.37";
inline const std::string kSolvableRadius = "2.38";
inline const std::string kHeightAtExceptional = "2.39";
inline const std::string kExceptionalPlacement = "2.29";
inline const std::string kQuantization = "2.6";
inline const std::string kControlCriterion = "2.43";
inline const std::string kUnitPropagation = "3.44";
inline const std::string kDiskFirst = "3.18";
inline const std::string kDiskFirstTotal = "3.19";
inline const std::string kDiskLater = "3.31";
inline const std::string kDiskLaterTotal = "3.32";
inline const std::string kAnnulusConcave = "3.37";
inline const std::string kAnnulusSkeleton = "3.38";
inline const std::string kAnnulusTrees = "3.39";
inline const std::string kAnnulusTotal = "3.40";
inline const std::string kStepCompact = "3.45";
inline const std::string kStepGerms = "3.47";
inline const std::string kStepSuperharmonic = "3.48";
inline const std::string kStepGeneral = "3.49";
inline const std::string kIrregularity = "3.54";
inline const std::string kGlobalStep = "3.55";
inline const std::string kGlobalCumulative = "3.58";
inline const std::string kRecursion = "3.59";
inline const std::string kRecursionBound = "3.60";
inline const std::string kHeightDisk = "3.64";
inline const std::string kHeightDiskTotal = "3.65";
inline const std::string kHeightAnnulusSkeleton = "3.66";
inline const std::string kHeightAnnulusTrees = "3.67";
inline const std::string kHeightAnnulusTotal = "3.68";
inline const std::string kHeightGlobalS = "3.69";
inline const std::string kHeightGlobal = "3.70";
inline const std::string kDeRham = "3.71";
inline const std::string kDeRhamBound = "3.72";
inline const std::string kFirstIndexTheorem = "0.1";
inline const std::string kDeRhamTheorem = "0.2";
inline const std::string kDiskIrregularity = "4.3";
inline const std::string kDiskIndex = "4.4";
inline const std::string kDiskH1 = "4.5";
inline const std::string kBoundarySuperharmonic = "4.2.2";
}  // namespace rowid

}  // namespace skc
