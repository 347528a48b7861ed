#pragma once

#include <functional>

namespace ssred {

/// 2x2 matrix over any ring-like value type.  The convention throughout is
/// that an operator T with matrix M acts on a basis (v1, v2) written as a row,
/// T((v1,v2)) = (v1,v2) M, so column j holds the coordinates of T(v_j).
template <typename T>
struct Mat2 {
    T a, b;  // ( a  b )
    T c, d;  // ( c  d )

    friend Mat2 operator+(const Mat2& l, const Mat2& r) {
        return {l.a + r.a, l.b + r.b, l.c + r.c, l.d + r.d};
    }
    friend Mat2 operator-(const Mat2& l, const Mat2& r) {
        return {l.a - r.a, l.b - r.b, l.c - r.c, l.d - r.d};
    }
    friend Mat2 operator*(const Mat2& l, const Mat2& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }

    T det() const { return a * d - b * c; }
    T trace() const { return a + d; }
    Mat2 adjugate() const { return {d, -b, -c, a}; }

    template <typename F>
    auto map(F&& f) const -> Mat2<decltype(f(a))> {
        return {f(a), f(b), f(c), f(d)};
    }
    template <typename F>
    void for_each(F&& f) const {
        f(a);
        f(b);
        f(c);
        f(d);
    }
};

}  // namespace ssred
