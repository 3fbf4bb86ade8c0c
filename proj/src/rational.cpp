#include "wpw/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace wpw {

double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            std::int64_t num = std::stoll(text.substr(0, slash));
            std::int64_t den = std::stoll(text.substr(slash + 1));
            if (den == 0) throw std::invalid_argument("zero denominator");
            return Rat(num, den);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rat(std::stoll(text));
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        if (frac.size() > 12) throw std::invalid_argument("too many decimals");
        bool neg = !whole.empty() && whole[0] == '-';
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        std::int64_t w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
        std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
        std::int64_t num = (neg ? -1 : 1) * (std::llabs(w) * den + f);
        return Rat(num, den);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
}

Rat rat_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite number");
    std::int64_t den = 1;
    for (int digits = 0; digits <= 9; ++digits) {
        double scaled = v * static_cast<double>(den);
        double rounded = std::round(scaled);
        if (std::fabs(scaled - rounded) < 1e-9 * std::max(1.0, std::fabs(scaled)))
            return Rat(static_cast<std::int64_t>(rounded), den);
        den *= 10;
    }
    throw std::invalid_argument("number is not a short decimal");
}

}  // namespace wpw
