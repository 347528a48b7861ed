#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>

namespace ssred {

/// Half-integer with +infinity, stored as twice its value.
///
/// Valuations on a ramified quadratic extension live in (1/2)Z, and the
/// valuation of 0 is +infinity.  All arithmetic here is exact.
class HalfInt {
public:
    constexpr HalfInt() : twice_(0), inf_(false) {}

    static constexpr HalfInt from_int(std::int64_t n) { return HalfInt(2 * n, false); }
    static constexpr HalfInt from_twice(std::int64_t t) { return HalfInt(t, false); }
    static constexpr HalfInt infinity() { return HalfInt(0, true); }

    constexpr bool is_infinite() const { return inf_; }
    constexpr std::int64_t twice() const {
        assert(!inf_);
        return twice_;
    }
    constexpr bool is_integer() const { return inf_ || twice_ % 2 == 0; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) {
        if (a.inf_ || b.inf_) return infinity();
        return from_twice(a.twice_ + b.twice_);
    }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) {
        assert(!b.inf_);  // inf - inf has no meaning here
        if (a.inf_) return infinity();
        return from_twice(a.twice_ - b.twice_);
    }
    constexpr HalfInt operator-() const {
        assert(!inf_);
        return from_twice(-twice_);
    }
    friend constexpr HalfInt operator*(std::int64_t n, HalfInt a) {
        if (a.inf_) return infinity();
        return from_twice(n * a.twice_);
    }

    friend constexpr bool operator==(HalfInt a, HalfInt b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.twice_ == b.twice_;
    }
    friend constexpr bool operator<(HalfInt a, HalfInt b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.twice_ < b.twice_;
    }
    friend constexpr bool operator<=(HalfInt a, HalfInt b) { return a == b || a < b; }
    friend constexpr bool operator>(HalfInt a, HalfInt b) { return b < a; }
    friend constexpr bool operator>=(HalfInt a, HalfInt b) { return b <= a; }

    friend constexpr HalfInt min(HalfInt a, HalfInt b) { return a < b ? a : b; }
    friend constexpr HalfInt max(HalfInt a, HalfInt b) { return a < b ? b : a; }

    std::string str() const {
        if (inf_) return "inf";
        if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    constexpr HalfInt(std::int64_t t, bool inf) : twice_(t), inf_(inf) {}
    std::int64_t twice_;
    bool inf_;
};

}  // namespace ssred
