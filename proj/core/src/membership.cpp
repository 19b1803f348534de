#include "fproc/membership.hpp"

#include "fproc/errors.hpp"

#include <charconv>
#include <numeric>

namespace fproc {

namespace {

bool parse_int(std::string_view text, std::int64_t& out) {
    if (text.empty() || text.size() > 18)
        return false;
    for (char c : text)
        if (c < '0' || c > '9')
            return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

std::int64_t pow10(std::size_t n) {
    std::int64_t r = 1;
    while (n--)
        r *= 10;
    return r;
}

} // namespace

Membership::Membership(std::int64_t num, std::int64_t den) {
    if (den == 0)
        throw ValidationError("membership denominator must be nonzero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num < 0 || num > den)
        throw ValidationError("membership value " + std::to_string(num) + "/" + std::to_string(den) +
                              " outside [0,1]");
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::optional<Membership> Membership::parse(std::string_view text, std::string* why) {
    auto fail = [&](const std::string& msg) -> std::optional<Membership> {
        if (why)
            *why = msg;
        return std::nullopt;
    };

    std::int64_t num = 0;
    std::int64_t den = 1;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        if (!parse_int(text.substr(0, slash), num) || !parse_int(text.substr(slash + 1), den))
            return fail("malformed rational '" + std::string(text) + "'");
        if (den == 0)
            return fail("zero denominator in '" + std::string(text) + "'");
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const std::string_view whole = text.substr(0, dot);
        const std::string_view frac = text.substr(dot + 1);
        std::int64_t w = 0;
        std::int64_t f = 0;
        if (!parse_int(whole, w) || !parse_int(frac, f) || whole.size() + frac.size() > 18)
            return fail("malformed decimal '" + std::string(text) + "'");
        den = pow10(frac.size());
        num = w * den + f;
    } else {
        if (!parse_int(text, num))
            return fail("malformed number '" + std::string(text) + "'");
    }
    if (num > den)
        return fail("value '" + std::string(text) + "' outside [0,1]");
    return Membership(num, den);
}

std::string Membership::str() const {
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering Membership::operator<=>(const Membership& other) const {
    __extension__ typedef __int128 int128;
    const int128 lhs = static_cast<int128>(num_) * other.den_;
    const int128 rhs = static_cast<int128>(other.num_) * den_;
    if (lhs < rhs)
        return std::strong_ordering::less;
    if (lhs > rhs)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

} // namespace fproc
