#include "avgdyn/rational.hpp"

#include <cctype>

namespace avgdyn {

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    }
    if (s.empty()) throw std::invalid_argument("parse_rational: empty input");

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos)
            throw std::invalid_argument("parse_rational: mixed decimal and fraction: " + text);
        bool negative = false;
        std::string digits = s;
        if (digits[0] == '+' || digits[0] == '-') {
            negative = digits[0] == '-';
            digits = digits.substr(1);
            --dot;
        }
        std::string intpart = digits.substr(0, dot);
        std::string fracpart = digits.substr(dot + 1);
        if (intpart.empty()) intpart = "0";
        for (char c : intpart + fracpart) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("parse_rational: bad decimal: " + text);
        }
        mpz_class num(intpart + fracpart);
        mpz_class den(1);
        for (size_t i = 0; i < fracpart.size(); ++i) den *= 10;
        Rational r(num, den);
        r.canonicalize();
        return negative ? Rational(-r) : r;
    }

    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("parse_rational: bad rational: " + text);
    if (r.get_den() == 0)
        throw std::invalid_argument("parse_rational: zero denominator: " + text);
    r.canonicalize();
    return r;
}

}  // namespace avgdyn
