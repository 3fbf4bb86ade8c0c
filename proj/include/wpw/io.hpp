#pragma once

#include "wpw/cover.hpp"
#include "wpw/ip.hpp"
#include "wpw/lp.hpp"
#include "wpw/model.hpp"

#include <iosfwd>
#include <vector>

namespace wpw {

// JSON-lines formats. Rationals are written as integers when integral and
// as "p/q" strings otherwise; readers accept numbers and strings.
void write_instance(std::ostream& out, const Instance& inst);
Instance read_instance(std::istream& in);

void write_schedule(std::ostream& out, const Schedule& s);
Schedule read_schedule(std::istream& in);

void write_stars(std::ostream& out, const StarSolution& s);
StarSolution read_stars(std::istream& in);

void write_violations(std::ostream& out, const std::vector<Violation>& v);
void write_lp_trace(std::ostream& out, const std::vector<LpStepTrace>& trace);

void write_cover(std::ostream& out, const CoverInstance& ci);
CoverInstance read_cover(std::istream& in);

}  // namespace wpw
