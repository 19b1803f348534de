#ifndef FPROC_MEMBERSHIP_HPP
#define FPROC_MEMBERSHIP_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fproc {

/// Exact membership degree: a rational in [0,1] kept in lowest terms with a
/// positive denominator. Equality and order are exact; the core never touches
/// floating point.
class Membership {
public:
    /// Zero membership (0/1).
    Membership() = default;

    /// Validates 0 <= num/den <= 1 and reduces to canonical form.
    Membership(std::int64_t num, std::int64_t den);

    static Membership zero() { return Membership(); }
    static Membership one() { return Membership(1, 1); }

    /// Accepts "n", "n/d" and finite decimals such as "0.25"; decimal
    /// conversion is exact. Returns std::nullopt and fills `why` (if given)
    /// when the text is malformed or outside [0,1].
    static std::optional<Membership> parse(std::string_view text, std::string* why = nullptr);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return num_ == den_; }

    /// Lowest terms; integral values print without a denominator ("0", "1").
    std::string str() const;

    bool operator==(const Membership&) const = default;
    std::strong_ordering operator<=>(const Membership& other) const;

    static const Membership& min(const Membership& a, const Membership& b) { return b < a ? b : a; }
    static const Membership& max(const Membership& a, const Membership& b) { return a < b ? b : a; }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace fproc

#endif // FPROC_MEMBERSHIP_HPP
