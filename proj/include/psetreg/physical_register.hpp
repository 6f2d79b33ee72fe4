#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psetreg/errors.hpp"
#include "psetreg/rational.hpp"
#include "psetreg/register_state.hpp"

namespace pset {

/// A rank-r physical register: an ordered list of sites, each restricted to
/// its two normal states. Basis index k ∈ [0, 2^r) assigns occupancy
/// bit (i−1) of k to the i-th site, so a lone signal at site i is |2^{i−1}).
class PhysicalRegister {
  public:
    explicit PhysicalRegister(std::vector<Site> sites) : sites_(std::move(sites)) {
        if (sites_.empty()) throw DomainError("physical register needs rank >= 1");
        if (sites_.size() > 62) throw DomainError("rank too large for basis indexing");
    }

    /// Convenience register over sites 1..r of observer 0.
    static PhysicalRegister ranked(int r) {
        std::vector<Site> s;
        for (int i = 1; i <= r; ++i) s.push_back(site(i));
        return PhysicalRegister(std::move(s));
    }

    int rank() const { return static_cast<int>(sites_.size()); }
    std::uint64_t dimension() const { return std::uint64_t{1} << rank(); }
    const std::vector<Site>& sites() const { return sites_; }

    /// The contextual vacuum C_1…C_r|Ω): every site present and in ground state.
    RegisterState ground() const { return basis_state(0); }

    RegisterState basis_state(std::uint64_t k) const {
        if (k >= dimension()) throw DomainError("basis index out of range");
        RegisterState st;
        for (int i = 0; i < rank(); ++i)
            st.set(sites_[i], (k >> i) & 1 ? PBit::Signal : PBit::Ground);
        return st;
    }

    /// Inverse of basis_state on normal states; a faulty or empty register
    /// site means the state is outside this register.
    std::uint64_t index_of(const RegisterState& st) const {
        std::uint64_t k = 0;
        for (int i = 0; i < rank(); ++i) {
            switch (st.at(sites_[i])) {
                case PBit::Ground: break;
                case PBit::Signal: k |= std::uint64_t{1} << i; break;
                default:
                    throw NonNormalState("site " + std::to_string(sites_[i].id) +
                                         " is not in a normal state");
            }
        }
        return k;
    }

    /// Number of signal-state sites of basis state k.
    int signality(std::uint64_t k) const {
        if (k >= dimension()) throw DomainError("basis index out of range");
        int n = 0;
        for (std::uint64_t x = k; x; x >>= 1) n += static_cast<int>(x & 1);
        return n;
    }

    int signality(const RegisterState& st) const { return signality(index_of(st)); }

    /// Occupancy notation |i1 i2 … ir) with the i-th digit for the i-th site.
    std::string occupancy_string(std::uint64_t k) const {
        std::string s = "|";
        for (int i = 0; i < rank(); ++i) s += ((k >> i) & 1) ? '1' : '0';
        s += ')';
        return s;
    }

  private:
    std::vector<Site> sites_;
};

/// Parses occupancy notation "|0011)" (or bare "0011") into (rank, index).
inline std::pair<int, std::uint64_t> parse_occupancy(std::string_view text) {
    std::string_view body = text;
    if (!body.empty() && body.front() == '|') body.remove_prefix(1);
    if (!body.empty() && body.back() == ')') body.remove_suffix(1);
    if (body.empty() || body.size() > 62)
        throw DomainError("bad occupancy string '" + std::string(text) + "'");
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] == '1')
            k |= std::uint64_t{1} << i;
        else if (body[i] != '0')
            throw DomainError("bad occupancy digit '" + std::string(1, body[i]) + "'");
    }
    return {static_cast<int>(body.size()), k};
}

/// Size of the signal class S^d in a rank-r register: C(r, d).
inline BigInt signal_class_size(int r, int d) {
    if (r < 0 || d < 0 || d > r) throw DomainError("signal class: d out of range");
    return binomial(static_cast<unsigned>(r), static_cast<unsigned>(d));
}

} // namespace pset
