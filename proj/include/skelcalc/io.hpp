#pragma once

#include "skelcalc/radius.hpp"
#include "skelcalc/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace skc {

// Text instance format, one "key=value ..." record per line:
//
//   [skeleton]
//   vertex=v0 genus=0 degree=1 boundary=0 S=1 tr=1 depth=0
//   edge=e0 from=v0 to=v1 length=1 degree=1 kind=skeleton|tree
//   germ=b0 at=v0 degree=1 kind=open|singular
//   [profiles]
//   rank=2
//   R1.v0=-1
//   R1.e0=1/2:-1/2            interior break points only, ends come from the vertices
//   R1.b0=-1                  slope leaving the attach point
//   [flags]
//   NL=0 spectral_at_boundary=0 minimal_S=0 label=
//
// Missing vertex values default to 0, missing germ slopes to 0.
Instance parse_instance(const std::string& text);  // ParseError / ValidationError
Instance read_instance(const std::string& path);
std::string serialize(const Instance& I);

std::string to_dot(const Complex& X);

std::string report_table(const std::vector<Row>& rows);
std::string report_json(const std::vector<Row>& rows);

}  // namespace skc
