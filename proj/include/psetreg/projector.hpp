#pragma once

#include <set>
#include <string>
#include <vector>

#include "psetreg/errors.hpp"
#include "psetreg/labstate.hpp"
#include "psetreg/rational.hpp"

namespace pset {

/// An outcome question over configurations: a conjunction of site conditions,
/// optionally closed with "and no signal anywhere else". Idempotent by
/// construction; two projectors with incompatible conditions are orthogonal.
class Projector {
  public:
    Projector& require_signal(int site) { signal_.insert(site); return *this; }
    Projector& require_faulty(int site) { faulty_.insert(site); return *this; }
    Projector& require_ground(int site) { ground_.insert(site); return *this; }
    /// No signal at any site other than the explicitly required ones.
    Projector& require_no_other_signal() { no_other_signal_ = true; return *this; }

    const std::set<int>& signal_sites() const { return signal_; }
    const std::set<int>& faulty_sites() const { return faulty_; }
    const std::set<int>& ground_sites() const { return ground_; }
    bool no_other_signal() const { return no_other_signal_; }

    bool matches(const Configuration& c) const {
        for (int s : signal_)
            if (c.at(s) != PBit::Signal) return false;
        for (int s : faulty_)
            if (c.at(s) != PBit::Faulty) return false;
        for (int s : ground_)
            if (c.at(s) != PBit::Ground) return false;
        if (no_other_signal_) {
            for (int s : c.signal_sites())
                if (!signal_.count(s)) return false;
        }
        return true;
    }

    friend bool operator==(const Projector&, const Projector&) = default;

  private:
    std::set<int> signal_;
    std::set<int> faulty_;
    std::set<int> ground_;
    bool no_other_signal_ = false;
};

/// Keeps only the terms the projector accepts.
inline Labstate project(const Labstate& state, const Projector& p) {
    Labstate out;
    for (const auto& [c, a] : state.terms())
        if (p.matches(c)) out.add_term(c, a);
    return out;
}

/// Born weight of the outcome: Σ |amp|² over matching configurations, for a
/// normalized state. Raises IrrationalProbability if the value leaves Q.
inline Rat probability(const Labstate& state, const Projector& p) {
    RealQ2 acc{};
    for (const auto& [c, a] : state.terms())
        if (p.matches(c)) acc = acc + a.sqmod();
    return acc.as_rat();
}

/// A rational-weighted mixture of pure labstates.
class DensityState {
  public:
    explicit DensityState(std::vector<std::pair<Rat, Labstate>> branches)
        : branches_(std::move(branches)) {
        Rat total;
        for (const auto& [w, _] : branches_) {
            if (w.is_negative()) throw DomainError("density weight is negative");
            total += w;
        }
        if (total != Rat(1)) throw DomainError("density weights must sum to 1");
    }

    const std::vector<std::pair<Rat, Labstate>>& branches() const { return branches_; }

  private:
    std::vector<std::pair<Rat, Labstate>> branches_;
};

inline Rat density_probability(const DensityState& rho, const Projector& p) {
    Rat acc;
    for (const auto& [w, state] : rho.branches()) acc += w * probability(state, p);
    return acc;
}

} // namespace pset
