#pragma once

#include <complex>

#include "psetreg/errors.hpp"
#include "psetreg/rational.hpp"

namespace pset {

/// Real value c1 + cr·√2 with rational c1, cr. The result type of squared
/// moduli: the imaginary components vanish there by construction.
struct RealQ2 {
    Rat c1;
    Rat cr;

    bool is_zero() const { return c1.is_zero() && cr.is_zero(); }

    friend RealQ2 operator+(const RealQ2& a, const RealQ2& b) { return {a.c1 + b.c1, a.cr + b.cr}; }
    friend RealQ2 operator-(const RealQ2& a, const RealQ2& b) { return {a.c1 - b.c1, a.cr - b.cr}; }
    friend RealQ2 operator*(const RealQ2& a, const RealQ2& b) {
        return {a.c1 * b.c1 + Rat(2) * a.cr * b.cr, a.c1 * b.cr + a.cr * b.c1};
    }
    friend bool operator==(const RealQ2&, const RealQ2&) = default;

    double as_double() const { return c1.as_double() + cr.as_double() * 1.4142135623730950488; }

    /// Extracts the rational value; throws IrrationalProbability if the √2
    /// component is nonzero.
    Rat as_rat() const {
        if (!cr.is_zero())
            throw IrrationalProbability("probability has irrational part " + cr.str() + "·√2");
        return c1;
    }
};

/// Exact amplitude a + b·i + c·√2 + d·i·√2 with rational a, b, c, d.
/// Every amplitude produced by the ±1, ±i and 1/√2 optical conventions lives
/// in this field, so scenario probabilities come out exactly rational.
class Amp {
  public:
    Amp() = default;
    Amp(std::int64_t n) : c1_(n) {} // NOLINT(google-explicit-constructor)
    Amp(Rat one) : c1_(std::move(one)) {} // NOLINT(google-explicit-constructor)
    Amp(Rat one, Rat i, Rat r2, Rat ir2)
        : c1_(std::move(one)), ci_(std::move(i)), cr_(std::move(r2)), cir_(std::move(ir2)) {}

    static Amp i() { return Amp(0, 1, 0, 0); }
    static Amp sqrt2() { return Amp(0, 0, 1, 0); }
    /// 1/√2 = √2/2.
    static Amp inv_sqrt2() { return Amp(0, 0, Rat(1, 2), 0); }

    const Rat& c1() const { return c1_; }
    const Rat& ci() const { return ci_; }
    const Rat& cr() const { return cr_; }
    const Rat& cir() const { return cir_; }

    bool is_zero() const {
        return c1_.is_zero() && ci_.is_zero() && cr_.is_zero() && cir_.is_zero();
    }

    friend bool operator==(const Amp&, const Amp&) = default;

    friend Amp operator+(const Amp& x, const Amp& y) {
        return {x.c1_ + y.c1_, x.ci_ + y.ci_, x.cr_ + y.cr_, x.cir_ + y.cir_};
    }
    friend Amp operator-(const Amp& x, const Amp& y) {
        return {x.c1_ - y.c1_, x.ci_ - y.ci_, x.cr_ - y.cr_, x.cir_ - y.cir_};
    }
    Amp operator-() const { return {-c1_, -ci_, -cr_, -cir_}; }

    // Multiplication expands the basis products with i² = −1 and (√2)² = 2.
    friend Amp operator*(const Amp& x, const Amp& y) {
        const Rat two(2);
        return {
            x.c1_ * y.c1_ - x.ci_ * y.ci_ + two * (x.cr_ * y.cr_ - x.cir_ * y.cir_),
            x.c1_ * y.ci_ + x.ci_ * y.c1_ + two * (x.cr_ * y.cir_ + x.cir_ * y.cr_),
            x.c1_ * y.cr_ + x.cr_ * y.c1_ - x.ci_ * y.cir_ - x.cir_ * y.ci_,
            x.c1_ * y.cir_ + x.cir_ * y.c1_ + x.ci_ * y.cr_ + x.cr_ * y.ci_,
        };
    }

    Amp& operator+=(const Amp& o) { return *this = *this + o; }
    Amp& operator-=(const Amp& o) { return *this = *this - o; }
    Amp& operator*=(const Amp& o) { return *this = *this * o; }

    Amp conj() const { return {c1_, -ci_, cr_, -cir_}; }

    /// x · conj(x). Real by construction, returned in the √2 subfield.
    RealQ2 sqmod() const {
        // (a + bi + c√2 + di√2)(a − bi + c√2 − di√2)
        //   = (a + c√2)² + (b + d√2)²
        return {c1_ * c1_ + ci_ * ci_ + Rat(2) * (cr_ * cr_ + cir_ * cir_),
                Rat(2) * (c1_ * cr_ + ci_ * cir_)};
    }

    /// Multiplicative inverse, rationalizing first over Q(√2) then over Q(i).
    /// Used for normalization checks; scenario evolution never divides.
    Amp inverse() const {
        if (is_zero()) throw DomainError("Amp: inverse of zero");
        // 1/x = conj(x) / (x·conj(x)); the denominator u + v√2 is real,
        // and 1/(u + v√2) = (u − v√2)/(u² − 2v²).
        const RealQ2 n = sqmod();
        const Rat disc = n.c1 * n.c1 - Rat(2) * n.cr * n.cr;
        const Rat u = n.c1 / disc;
        const Rat v = -n.cr / disc;
        return conj() * Amp(u, 0, v, 0);
    }

    friend Amp operator/(const Amp& x, const Amp& y) { return x * y.inverse(); }

    std::complex<double> as_complex() const {
        constexpr double r2 = 1.4142135623730950488;
        return {c1_.as_double() + cr_.as_double() * r2,
                ci_.as_double() + cir_.as_double() * r2};
    }

  private:
    Rat c1_; // coefficient of 1
    Rat ci_; // coefficient of i
    Rat cr_; // coefficient of √2
    Rat cir_; // coefficient of i√2
};

} // namespace pset
