#pragma once

#include <cstdint>
#include <vector>

#include "psetreg/errors.hpp"
#include "psetreg/rational.hpp"

namespace pset {

/// A weighted relevant question Σ_k |k) X_k (k| over a rank-r register: each
/// basis answer |k) is worth the real number X_k to the observer.
class ClassicalObservable {
  public:
    explicit ClassicalObservable(std::vector<Rat> weights) : weights_(std::move(weights)) {
        if (weights_.empty()) throw DomainError("observable needs at least one weight");
    }

    std::size_t dimension() const { return weights_.size(); }

    const Rat& value_at(std::uint64_t k) const {
        if (k >= weights_.size()) throw DomainError("observable: basis index out of range");
        return weights_[k];
    }

  private:
    std::vector<Rat> weights_;
};

/// Run-to-run randomness of the initial labstate: probability ω_k of starting
/// in basis state |k). Weights are non-negative and sum to one.
class ClassicalMixture {
  public:
    explicit ClassicalMixture(std::vector<Rat> weights) : weights_(std::move(weights)) {
        Rat total;
        for (const Rat& w : weights_) {
            if (w.is_negative()) throw DomainError("mixture weight is negative");
            total += w;
        }
        if (total != Rat(1)) throw DomainError("mixture weights must sum to 1");
    }

    std::size_t dimension() const { return weights_.size(); }
    const Rat& weight(std::uint64_t k) const { return weights_.at(k); }

  private:
    std::vector<Rat> weights_;
};

/// ⟨X⟩ for a single run ending in basis state |k): the dyadic sum collapses
/// to the one term whose question answers yes.
inline Rat expectation(const ClassicalObservable& obs, std::uint64_t k) {
    return obs.value_at(k);
}

/// ⟨X⟩ over randomly varying initial states: Σ_k ω_k X_k.
inline Rat mixture_expectation(const ClassicalObservable& obs, const ClassicalMixture& mix) {
    if (obs.dimension() != mix.dimension())
        throw DomainError("observable and mixture dimensions differ");
    Rat acc;
    for (std::uint64_t k = 0; k < obs.dimension(); ++k)
        acc += mix.weight(k) * obs.value_at(k);
    return acc;
}

} // namespace pset
