#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ssred/ssred.hpp"

namespace testsup {

using namespace ssred;

/// Deterministic rationals for property tests: (num/den) * p^e with small
/// p-free parts.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
    }
    mpq_class rational(long p, std::int64_t vmin, std::int64_t vmax) {
        std::int64_t e = uniform(vmin, vmax);
        std::int64_t num = uniform(1, 40), den = uniform(1, 40);
        while (num % p == 0) ++num;
        while (den % p == 0) ++den;
        if (uniform(0, 1)) num = -num;
        mpq_class q(num, den);
        q.canonicalize();
        mpz_class pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(e < 0 ? -e : e));
        if (e >= 0)
            q *= mpq_class(pe);
        else
            q /= mpq_class(pe);
        q.canonicalize();
        return q;
    }
    FieldElem elem(long p, std::int64_t vmin = -3, std::int64_t vmax = 3, bool allow_pi = true) {
        mpq_class x = rational(p, vmin, vmax);
        mpq_class y = (allow_pi && uniform(0, 1)) ? rational(p, vmin, vmax) : mpq_class(0);
        return FieldElem::from_parts(x, y, p);
    }

private:
    std::mt19937_64 eng_;
};

/// Brute-force p-adic valuation of n! by multiplying out and dividing.
inline std::int64_t vp_factorial_bruteforce(std::int64_t n, long p) {
    mpz_class f = 1;
    for (std::int64_t i = 2; i <= n; ++i) f *= i;
    std::int64_t v = 0;
    while (f != 0 && f % p == 0) {
        f /= p;
        ++v;
    }
    return v;
}

inline TruncSeries random_series(Rng& rng, long p, std::int64_t n, std::int64_t terms = 6) {
    TruncSeries s = TruncSeries::zero(p, n);
    for (std::int64_t t = 0; t < terms; ++t) {
        std::int64_t d = rng.uniform(0, n);
        s = s + TruncSeries::monomial(rng.elem(p, -2, 3), d, n);
    }
    return s;
}

/// One filtration-recursion instance: monodromy scalars, provenance, and
/// whether the integrality hypotheses (a-d and bc integral) hold.
struct ScalarInstance {
    long p = 0;
    std::int64_t h = 0;
    FieldElem a, b, c, d;
    bool integral_hyps = false;
    bool from_module = false;
    FieldElem L;  // set when from_module
    std::string desc;
};

inline ScalarInstance module_instance(long p, std::int64_t h, const FieldElem& L) {
    FilteredModule Df = to_f_basis(make_D(p, h + 1, L));
    ScalarInstance s;
    s.p = p;
    s.h = h;
    s.a = Df.n.a;
    s.b = Df.n.b;
    s.c = Df.n.c;
    s.d = Df.n.d;
    s.integral_hyps = is_true((s.a - s.d).val_ge(HalfInt::from_int(0))) &&
                      is_true((s.b * s.c).val_ge(HalfInt::from_int(0)));
    s.from_module = true;
    s.L = L;
    s.desc = "module p=" + std::to_string(p) + " h=" + std::to_string(h) +
             " vL=" + L.valuation().v.str();
    return s;
}

/// Grid for the recursion oracle: p in {3,5,7}, h in 2..8, several rational
/// scalar sets plus the module-derived ones.
inline std::vector<ScalarInstance> recursion_grid() {
    std::vector<ScalarInstance> out;
    for (long p : {3L, 5L, 7L}) {
        for (std::int64_t h = 2; h <= 8; ++h) {
            auto q = [&](long num, long den) {
                return FieldElem::from_rational(mpq_class(num, den), p);
            };
            ScalarInstance g1{p, h, q(1, 1), q(2, 1), q(3, 1), q(-1, 1), true, false, {},
                              "integers"};
            ScalarInstance g2{p, h, q(1, 2), q(5, 1), q(1, 5), q(-1, 2), true, false, {},
                              "bc-paired"};
            ScalarInstance g3{p, h, q(2, 3), q(0, 1), q(7, 1), q(2, 3), true, false, {}, "b=0"};
            out.push_back(g1);
            out.push_back(g2);
            out.push_back(g3);
            out.push_back(module_instance(p, h, FieldElem::pi_pow(-2, p)));
            out.push_back(module_instance(p, h, FieldElem::pi_pow(-3, p)));
        }
    }
    return out;
}

inline const CertRecord* find_cert(const RunReport& rep, const std::string& name) {
    for (const auto& c : rep.certs)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace testsup
