#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "psetreg/amp.hpp"
#include "psetreg/bit_ops.hpp"
#include "psetreg/errors.hpp"

namespace pset {

/// One basis configuration of a declared register of n ESDs (sites 1..n).
/// Sites normally hold ground, signal or faulty; the empty value appears only
/// when an operator annihilates a declared site, which drops the term out of
/// the register (it stays orthogonal to every register configuration).
class Configuration {
  public:
    Configuration() = default;
    explicit Configuration(int n) : codes_(static_cast<std::size_t>(n), PBit::Ground) {
        if (n < 1) throw DomainError("configuration needs at least one site");
    }

    static Configuration vacuum(int n) { return Configuration(n); }

    int size() const { return static_cast<int>(codes_.size()); }

    PBit at(int s) const { return codes_[check(s)]; }

    Configuration with(int s, PBit v) const {
        Configuration c = *this;
        c.codes_[check(s)] = v;
        return c;
    }

    void set(int s, PBit v) { codes_[check(s)] = v; }

    std::vector<int> signal_sites() const { return sites_in(PBit::Signal); }
    std::vector<int> faulty_sites() const { return sites_in(PBit::Faulty); }

    bool any_signal() const {
        return std::ranges::any_of(codes_, [](PBit v) { return v == PBit::Signal; });
    }

    friend bool operator==(const Configuration&, const Configuration&) = default;
    friend auto operator<=>(const Configuration&, const Configuration&) = default;

  private:
    std::size_t check(int s) const {
        if (s < 1 || s > size()) throw DomainError("site " + std::to_string(s) + " not declared");
        return static_cast<std::size_t>(s - 1);
    }

    std::vector<int> sites_in(PBit v) const {
        std::vector<int> out;
        for (int s = 1; s <= size(); ++s)
            if (codes_[static_cast<std::size_t>(s - 1)] == v) out.push_back(s);
        return out;
    }

    std::vector<PBit> codes_;
};

/// A quantum labstate: a finite linear combination of configurations with
/// exact amplitudes. Zero-amplitude terms are pruned so equality is term-wise.
class Labstate {
  public:
    Labstate() = default;

    /// The contextual vacuum C_1…C_n|Ω) of the declared register.
    static Labstate vacuum(int n) { return basis(Configuration::vacuum(n)); }

    static Labstate basis(Configuration c, Amp a = Amp(1)) {
        Labstate s;
        s.add_term(std::move(c), std::move(a));
        return s;
    }

    /// Ā over `signals` and D over `faulty` applied to the vacuum.
    static Labstate monomial(int n, const std::vector<int>& signals,
                             const std::vector<int>& faulty = {}, Amp a = Amp(1)) {
        Configuration c(n);
        for (int s : signals) c.set(s, PBit::Signal);
        for (int s : faulty) c.set(s, PBit::Faulty);
        return basis(std::move(c), std::move(a));
    }

    const std::map<Configuration, Amp>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Amp coefficient(const Configuration& c) const {
        auto it = terms_.find(c);
        return it == terms_.end() ? Amp() : it->second;
    }

    void add_term(Configuration c, const Amp& a) {
        if (a.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(std::move(c), a);
        if (!inserted) {
            it->second += a;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend Labstate operator+(const Labstate& x, const Labstate& y) {
        Labstate out = x;
        for (const auto& [c, a] : y.terms_) out.add_term(c, a);
        return out;
    }

    friend Labstate operator*(const Amp& a, const Labstate& x) {
        Labstate out;
        if (a.is_zero()) return out;
        for (const auto& [c, v] : x.terms_) out.terms_.emplace(c, a * v);
        return out;
    }

    friend Labstate operator-(const Labstate& x, const Labstate& y) {
        return x + (Amp(-1) * y);
    }

    friend bool operator==(const Labstate&, const Labstate&) = default;

    /// Σ |amp|², exactly.
    RealQ2 norm_sq() const {
        RealQ2 acc{};
        for (const auto& [c, a] : terms_) acc = acc + a.sqmod();
        return acc;
    }

  private:
    std::map<Configuration, Amp> terms_;
};

/// Inner product (a|b): conjugate-linear in the first argument, with the
/// configurations as a preferred orthonormal basis.
inline Amp inner(const Labstate& a, const Labstate& b) {
    const bool a_smaller = a.term_count() <= b.term_count();
    const auto& lead = a_smaller ? a.terms() : b.terms();
    const auto& other = a_smaller ? b : a;
    Amp acc;
    for (const auto& [c, v] : lead) {
        const Amp w = other.coefficient(c);
        if (w.is_zero()) continue;
        acc += a_smaller ? v.conj() * w : w.conj() * v;
    }
    return acc;
}

/// Site-wise bit operator extended linearly over the terms. The underlying
/// map need not be injective, so amplitudes of merging configurations add.
inline Labstate apply_site_bitop(const BitOp& op, int site, const Labstate& state) {
    Labstate out;
    for (const auto& [c, a] : state.terms()) out.add_term(c.with(site, op(c.at(site))), a);
    return out;
}

inline Labstate apply_creation(int site, const Labstate& s) {
    return apply_site_bitop(bit_ops::signal_create, site, s);
}
inline Labstate apply_annihilation(int site, const Labstate& s) {
    return apply_site_bitop(bit_ops::signal_annihilate, site, s);
}
inline Labstate apply_decommission(int site, const Labstate& s) {
    return apply_site_bitop(bit_ops::decommission, site, s);
}

/// True when b = u·a for some unit amplitude u. Probabilities never see a
/// global phase, and one of the shipped scenarios is quoted only up to one.
inline bool equal_up_to_global_phase(const Labstate& a, const Labstate& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.term_count() != b.term_count()) return false;
    const auto& [c0, a0] = *a.terms().begin();
    const Amp b0 = b.coefficient(c0);
    if (b0.is_zero()) return false;
    const Amp u = b0 * a0.inverse();
    if (u.sqmod() != RealQ2{Rat(1), Rat(0)}) return false;
    return u * a == b;
}

} // namespace pset
