#include "io/points.hpp"

#include "numerics/precision.hpp"
#include "quadforms/cm_point.hpp"

#include <regex>

namespace singmod::io {

std::complex<double> PointSpec::approx() const
{
    if (form)
        return quadforms::cm_point(*form).value();
    return {std::stod(re), std::stod(im)};
}

Complex PointSpec::value(Precision prec) const
{
    if (form)
        return quadforms::cm_point(*form).value(prec);
    return Complex(Real::from_string(re, prec), Real::from_string(im, prec));
}

PointSpec parse_point(std::string const & text)
{
    static std::regex const triple(R"(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*)");
    static std::regex const integer(R"(\s*(-\d+)\s*)");
    // optional real part, then a signed imaginary part ending in i
    static std::regex const complex(R"(\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*)?((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*i\s*)");

    PointSpec p;
    p.text = text;
    std::smatch mt;
    if (std::regex_match(text, mt, triple)) {
        quadforms::QuadForm f{std::stoll(mt[1]), std::stoll(mt[2]), std::stoll(mt[3])};
        if (!f.is_positive_definite())
            throw DomainError("form " + text + " is not positive definite");
        p.form = f;
        return p;
    }
    if (std::regex_match(text, mt, integer)) {
        auto d = quadforms::Discriminant::make(std::stoll(mt[1]));
        p.form = quadforms::principal_form(d);
        return p;
    }
    if (std::regex_match(text, mt, complex)) {
        p.re = mt[1].matched ? mt[1].str() : "0";
        if (!p.re.empty() && p.re[0] == '+')
            p.re.erase(0, 1);
        std::string mag = mt[3].matched ? mt[3].str() : "1";
        bool negative = mt[2].matched && mt[2].str() == "-";
        // "2i" parses its 2 as the real part when no sign separates them
        if (mt[1].matched && !mt[2].matched && !mt[3].matched) {
            mag = p.re;
            p.re = "0";
            if (!mag.empty() && mag[0] == '-') {
                negative = true;
                mag.erase(0, 1);
            }
        }
        if (negative)
            throw DomainError("point " + text + " is not in the upper half plane");
        if (std::stod(mag) <= 0.0)
            throw DomainError("point " + text + " is not in the upper half plane");
        p.im = mag;
        return p;
    }
    throw DomainError("cannot parse point '" + text + "' (expected a,b,c or a discriminant or x+yi)");
}

} // namespace singmod::io
