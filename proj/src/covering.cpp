#include "wpw/covering.hpp"

#include "wpw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wpw {

namespace {

constexpr double kSat = 1.0 - 1e-12;

double grow(double s0, double delta, double w, double dt) {
    return std::min(1.0, (s0 + delta) * std::exp(dt / w) - delta);
}

}  // namespace

double covering_lhs(const std::vector<Participant>& ps, double requirement, double y) {
    double lhs = requirement * y;
    for (const auto& p : ps) lhs += std::min(1.0, p.sum);
    return lhs;
}

CoveringOutcome covering_step(std::vector<Participant>& ps, double& y, const CoveringParams& prm) {
    CoveringOutcome out;
    out.y_before = y;
    const double R = prm.requirement;
    const double d = prm.delta;
    const bool has_y = prm.loss.has_value();
    const double eps = 1e-12 * std::max(1.0, R);

    for (int guard = 0; covering_lhs(ps, R, y) < R - eps; ++guard) {
        if (guard > 10 * static_cast<int>(ps.size()) + 10) throw NumericalStall("too many events");
        out.raised = true;
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < ps.size(); ++i)
            if (ps[i].sum < kSat) active.push_back(i);

        bool zero_done = false;
        for (std::size_t i : active) {
            if (ps[i].weight <= 0) {
                ps[i].raised += 1.0 - ps[i].sum;
                ps[i].sum = 1.0;
                zero_done = true;
            }
        }
        if (has_y && *prm.loss <= 0 && y < kSat) {
            y = 1.0;
            zero_done = true;
        }
        if (zero_done) continue;

        const bool y_moves = has_y && y < kSat;
        const double m = static_cast<double>(active.size());
        double a = 0, b = 0;  // dy/dtau = a y + b
        if (y_moves) {
            a = R / *prm.loss;
            b = d * std::max(0.0, m - prm.k) / *prm.loss;
        }
        const bool y_grows = y_moves && (y > 0 || b > 0);
        if (active.empty() && !y_grows) throw InfeasibleCover("covering constraint cannot be met");

        auto y_at = [&](double dt) {
            if (!y_moves) return y;
            double c = b / a;
            return std::min(1.0, (y + c) * std::exp(a * dt) - c);
        };

        double next = std::numeric_limits<double>::infinity();
        for (std::size_t i : active)
            next = std::min(next, ps[i].weight * std::log((1.0 + d) / (ps[i].sum + d)));
        if (y_grows) {
            double c = b / a;
            next = std::min(next, std::log((1.0 + c) / (y + c)) / a);
        }
        if (!std::isfinite(next)) throw NumericalStall("no next event");

        auto lhs_at = [&](double dt) {
            double v = R * y_at(dt);
            for (std::size_t i = 0; i < ps.size(); ++i) {
                double s = ps[i].sum;
                if (s < kSat) s = grow(s, d, ps[i].weight, dt);
                v += std::min(1.0, s);
            }
            return v;
        };

        double dt = next;
        bool closes = lhs_at(next) >= R - eps;
        if (closes) {
            double lo = 0, hi = next;
            int it = 0;
            while (hi - lo > prm.tolerance * std::max(1.0, hi)) {
                if (++it > 400) throw NumericalStall("bisection did not converge");
                double mid = 0.5 * (lo + hi);
                if (lhs_at(mid) >= R - eps) hi = mid;
                else lo = mid;
            }
            dt = hi;
        }
        for (std::size_t i : active) {
            double s = grow(ps[i].sum, d, ps[i].weight, dt);
            if (!closes && ps[i].weight * std::log((1.0 + d) / (ps[i].sum + d)) <= next) s = 1.0;
            out.cost += ps[i].weight * (s - ps[i].sum);
            ps[i].raised += s - ps[i].sum;
            ps[i].sum = s;
        }
        if (y_moves) {
            double ny = y_at(dt);
            if (!closes && y_grows && std::log((1.0 + b / a) / (y + b / a)) / a <= next) ny = 1.0;
            out.cost += *prm.loss * (ny - y);
            y = ny;
        }
        out.tau += dt;
        if (closes && covering_lhs(ps, R, y) < R - eps) {
            // Rounding left the constraint a hair short; finish on the next pass.
            continue;
        }
    }
    out.y_after = y;
    return out;
}

}  // namespace wpw
