#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "psetreg/bit_ops.hpp"

namespace pset {

/// One ESD site in the universal register. Sites belong to an observer
/// (tag 0 when there is only one); two observers may number their own ESDs
/// 1..r independently, so identity is the (observer, id) pair.
struct Site {
    std::int32_t id = 0;
    std::int32_t observer = 0;

    friend constexpr auto operator<=>(const Site& a, const Site& b) {
        if (auto c = a.observer <=> b.observer; c != 0) return c;
        return a.id <=> b.id;
    }
    friend constexpr bool operator==(const Site&, const Site&) = default;
};

inline Site site(std::int32_t id, std::int32_t observer = 0) { return {id, observer}; }

/// A classical labstate: finite-support assignment of power-set bit states to
/// sites. Sites in their empty state are not stored, so the information void
/// |Ω) is the empty map and any state differs from it on finitely many sites.
class RegisterState {
  public:
    RegisterState() = default;

    static RegisterState void_state() { return {}; }

    PBit at(Site s) const {
        auto it = map_.find(s);
        return it == map_.end() ? PBit::Empty : it->second;
    }

    RegisterState& set(Site s, PBit v) {
        if (v == PBit::Empty)
            map_.erase(s);
        else
            map_[s] = v;
        return *this;
    }

    bool is_void() const { return map_.empty(); }
    std::size_t support_size() const { return map_.size(); }

    const std::map<Site, PBit>& entries() const { return map_; }

    friend bool operator==(const RegisterState&, const RegisterState&) = default;
    friend bool operator<(const RegisterState& a, const RegisterState& b) {
        return a.map_ < b.map_;
    }

  private:
    std::map<Site, PBit> map_;
};

/// Applies construction operators at the listed sites: each is built (or
/// repaired) and left in its ground state, whatever it held before.
inline RegisterState construct_sites(RegisterState state, const std::vector<Site>& sites) {
    for (Site s : sites) state.set(s, PBit::Ground);
    return state;
}

/// Register operator ∏O_i with a single non-identity factor: applies `op` at
/// site i and leaves every other site untouched.
inline RegisterState apply_site_op(const BitOp& op, Site i, RegisterState state) {
    state.set(i, op(state.at(i)));
    return state;
}

/// Orthonormality bracket: classical register states are dual-paired by a
/// product of site-wise Kronecker deltas, so the bracket is 1 exactly when the
/// canonical assignments agree everywhere.
inline int bracket_states(const RegisterState& a, const RegisterState& b) {
    return a == b ? 1 : 0;
}

/// Which observers own apparatus in this state, and which sites. Observers
/// whose site sets stay disjoint can be discussed as if each were alone; the
/// split is a report, not a mechanism.
inline std::map<std::int32_t, std::vector<std::int32_t>> observer_report(
    const RegisterState& state) {
    std::map<std::int32_t, std::vector<std::int32_t>> out;
    for (const auto& [s, v] : state.entries()) out[s.observer].push_back(s.id);
    return out;
}

inline bool observers_disjoint(const std::vector<Site>& a, const std::vector<Site>& b) {
    std::set<Site> sa(a.begin(), a.end());
    for (Site s : b)
        if (sa.count(s)) return false;
    return true;
}

} // namespace pset
