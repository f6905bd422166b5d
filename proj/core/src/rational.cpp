#include "bellforge/rational.hpp"

#include "bellforge/errors.hpp"

#include <cctype>

namespace bellforge {

Rational parse_rational(const std::string& text) {
    // Grammar: [+-]digits["/"digits]. No whitespace, no empty parts.
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
    std::size_t num_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == num_begin) throw InputError("invalid rational '" + text + "': missing numerator digits");

    std::string num = text.substr(0, pos);
    std::string den = "1";
    if (pos < text.size()) {
        if (text[pos] != '/') throw InputError("invalid rational '" + text + "': unexpected character");
        ++pos;
        std::size_t den_begin = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == den_begin || pos != text.size())
            throw InputError("invalid rational '" + text + "': malformed denominator");
        den = text.substr(den_begin);
    }

    Integer n(num), d(den);
    if (d == 0) throw InputError("invalid rational '" + text + "': zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value) {
    return value.get_str();
}

} // namespace bellforge
