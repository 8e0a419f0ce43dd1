// Arithmetic in a prime residue field F_p and 2x2 matrices over it.
#pragma once

#include <qhmf/rational.hpp>

#include <array>
#include <cstdint>

namespace qhmf {

struct Fq {
    std::uint64_t p;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b % p) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (__uint128_t)a * b % p; }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
        std::uint64_t r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint64_t inv(std::uint64_t a) const {
        if (a % p == 0) throw std::domain_error("Fq::inv of zero");
        return pow(a, p - 2);
    }
    // reduce a rational whose denominator is coprime to p
    std::uint64_t reduce(const Rat& r) const {
        std::uint64_t den = mpz_fdiv_ui(r.get_den_mpz_t(), p);
        if (den == 0) throw std::domain_error("Fq::reduce: denominator divisible by p");
        std::uint64_t num = mpz_fdiv_ui(r.get_num_mpz_t(), p);
        return mul(num, inv(den));
    }
};

struct Mat2Fq {
    // row-major: [[a, b], [c, d]]
    std::array<std::uint64_t, 4> m{0, 0, 0, 0};

    static Mat2Fq identity() { return {{1, 0, 0, 1}}; }
    std::uint64_t& at(int r, int c) { return m[static_cast<size_t>(2 * r + c)]; }
    std::uint64_t at(int r, int c) const { return m[static_cast<size_t>(2 * r + c)]; }

    Mat2Fq mul(const Fq& F, const Mat2Fq& o) const {
        Mat2Fq r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.at(i, j) = F.add(F.mul(at(i, 0), o.at(0, j)), F.mul(at(i, 1), o.at(1, j)));
        return r;
    }
    std::uint64_t det(const Fq& F) const { return F.sub(F.mul(m[0], m[3]), F.mul(m[1], m[2])); }
    std::uint64_t trace(const Fq& F) const { return F.add(m[0], m[3]); }
    Mat2Fq inverse(const Fq& F) const {
        std::uint64_t d = det(F);
        std::uint64_t di = F.inv(d);
        Mat2Fq r;
        r.m = {F.mul(m[3], di), F.mul(F.neg(m[1]), di), F.mul(F.neg(m[2]), di), F.mul(m[0], di)};
        return r;
    }
    bool operator==(const Mat2Fq& o) const { return m == o.m; }
};

}  // namespace qhmf
