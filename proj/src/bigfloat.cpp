#include "graphenum/bigfloat.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <sstream>

namespace graphenum {

namespace {

// mantissa digits (no sign, no dot) and decimal exponent, mpfr_get_str style:
// value = 0.mantissa * 10^exp
bool decimal_parts(const BigFloat& x, int digits, std::string& mantissa, long& exp, bool& negative) {
    if (x.is_nan()) return false;
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), x.raw(), MPFR_RNDN);
    if (s == nullptr) return false;
    std::string str(s);
    mpfr_free_str(s);
    negative = !str.empty() && str[0] == '-';
    if (negative) str.erase(0, 1);
    mantissa = str;
    exp = static_cast<long>(e);
    return true;
}

}  // namespace

std::string BigFloat::to_decimal(int sig_digits) const {
    if (is_nan()) return "nan";
    if (mpfr_zero_p(v_)) return "0";
    std::string mant;
    long e;
    bool neg;
    if (!decimal_parts(*this, sig_digits, mant, e, neg)) return "nan";
    std::string sign = neg ? "-" : "";
    // positional form when the exponent is moderate
    if (e >= -4 && e <= sig_digits + 4) {
        std::string out;
        if (e <= 0) {
            out = "0." + std::string(static_cast<std::size_t>(-e), '0') + mant;
        } else if (static_cast<std::size_t>(e) >= mant.size()) {
            out = mant + std::string(static_cast<std::size_t>(e) - mant.size(), '0');
        } else {
            out = mant.substr(0, static_cast<std::size_t>(e)) + "." + mant.substr(static_cast<std::size_t>(e));
        }
        return sign + out;
    }
    std::ostringstream os;
    os << sign << mant.substr(0, 1) << "." << mant.substr(1) << "e" << (e - 1);
    return os.str();
}

int agreed_decimal_digits(const BigFloat& a, const BigFloat& b, int max_digits) {
    if (a.is_nan() || b.is_nan()) return 0;
    if (mpfr_zero_p(a.raw()) && mpfr_zero_p(b.raw())) return max_digits;
    std::string ma, mb;
    long ea, eb;
    bool na, nb;
    if (!decimal_parts(a, max_digits, ma, ea, na) || !decimal_parts(b, max_digits, mb, eb, nb)) return 0;
    if (na != nb || ea != eb) return 0;
    int n = static_cast<int>(std::min(ma.size(), mb.size()));
    int agree = 0;
    while (agree < n && ma[static_cast<std::size_t>(agree)] == mb[static_cast<std::size_t>(agree)]) ++agree;
    return agree;
}

}  // namespace graphenum
