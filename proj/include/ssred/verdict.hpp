#pragma once

#include <string>

namespace ssred {

/// Outcome of a certified check.  Unknown means the working precision could
/// not separate the quantity from the threshold; it is a legal answer and
/// triggers escalation, never a silent guess.
enum class Verdict { True, False, Unknown };

inline Verdict meet(Verdict a, Verdict b) {
    if (a == Verdict::False || b == Verdict::False) return Verdict::False;
    if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
    return Verdict::True;
}

inline bool is_true(Verdict v) { return v == Verdict::True; }

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        default: return "unknown";
    }
}

}  // namespace ssred
