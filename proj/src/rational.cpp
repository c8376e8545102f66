#include "htpair/rational.hpp"

#include <stdexcept>

namespace htpair {

Rational rational_from_string(const std::string& s) {
    try {
        Rational r(s);
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

}  // namespace htpair
