// Rational intervals with outward-directed arithmetic, used wherever an
// infinite product has to be truncated.
#pragma once

#include "classchain/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace classchain {

struct Interval {
    Rational lo;
    Rational hi;

    Interval() : lo(0), hi(0) {}
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    }
    static Interval point(const Rational& v) { return Interval(v, v); }

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo + b.lo, a.hi + b.hi);
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo - b.hi, a.hi - b.lo);
}

inline Interval operator*(const Interval& a, const Interval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                    std::max(std::max(p1, p2), std::max(p3, p4)));
}

inline Interval operator*(const Interval& a, const Rational& s) {
    return s >= 0 ? Interval(a.lo * s, a.hi * s) : Interval(a.hi * s, a.lo * s);
}

inline Interval operator*(const Rational& s, const Interval& a) { return a * s; }

inline Interval operator+(const Interval& a, const Rational& s) {
    return Interval(a.lo + s, a.hi + s);
}

}  // namespace classchain
