#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace wpw {

using BigRat = boost::multiprecision::cpp_rational;

struct LpResult {
    enum Status { Optimal, Unbounded } status = Optimal;
    BigRat objective{0};
    std::vector<BigRat> x;     // primal values
    std::vector<BigRat> dual;  // one per constraint row
};

// max c.x subject to A x <= b, x >= 0, with b >= 0 so the slack basis is
// feasible. Dense tableau, Bland's rule.
LpResult simplex_max(const std::vector<std::vector<BigRat>>& A, const std::vector<BigRat>& b,
                     const std::vector<BigRat>& c);

}  // namespace wpw
