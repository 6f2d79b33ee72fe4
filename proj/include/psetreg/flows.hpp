#pragma once

#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "psetreg/errors.hpp"
#include "psetreg/physical_register.hpp"
#include "psetreg/rational.hpp"
#include "psetreg/register_state.hpp"

namespace pset {

namespace detail {
inline void require_bijection(const std::vector<std::uint64_t>& images, std::uint64_t n) {
    if (images.size() != n) throw InvalidPermutation("permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (std::uint64_t v : images) {
        if (v >= n || seen[v]) throw InvalidPermutation("image list is not a bijection");
        seen[v] = true;
    }
}
} // namespace detail

/// Reversible classical dynamics on a rank-r register. Either a permutation
/// of the 2^r basis states (general permutation flow) or a permutation P* of
/// the r sites (signal permutation dynamics, occupancy rule i'_j = i_{P*j},
/// which conserves signality).
class PermutationFlow {
  public:
    /// General flow from basis-state images (length 2^r).
    static PermutationFlow from_state_images(int rank, std::vector<std::uint64_t> images) {
        detail::require_bijection(images, std::uint64_t{1} << rank);
        PermutationFlow f(rank);
        f.state_images_ = std::move(images);
        return f;
    }

    /// Signal-conserving flow from site images: sitePerm[j-1] = P*(j), 1-based.
    static PermutationFlow from_site_images(int rank, std::vector<std::uint64_t> site_perm) {
        for (auto& v : site_perm) {
            if (v < 1) throw InvalidPermutation("site permutation entries are 1-based");
            --v;
        }
        detail::require_bijection(site_perm, static_cast<std::uint64_t>(rank));
        PermutationFlow f(rank);
        f.site_images_ = std::move(site_perm);
        return f;
    }

    static PermutationFlow identity(int rank) {
        std::vector<std::uint64_t> im(std::uint64_t{1} << rank);
        std::iota(im.begin(), im.end(), 0);
        return from_state_images(rank, std::move(im));
    }

    int rank() const { return rank_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << rank_; }
    bool is_signal_flow() const { return !site_images_.empty(); }

    /// One elementary time step |k) → |Uk).
    std::uint64_t step(std::uint64_t k) const {
        if (k >= dimension()) throw DomainError("basis index out of range");
        if (!is_signal_flow()) return state_images_[k];
        // new occupancy of site j is the old occupancy of site P*j
        std::uint64_t out = 0;
        for (int j = 0; j < rank_; ++j)
            if ((k >> site_images_[j]) & 1) out |= std::uint64_t{1} << j;
        return out;
    }

    /// The flow as an explicit basis-state permutation.
    std::vector<std::uint64_t> state_images() const {
        std::vector<std::uint64_t> im(dimension());
        for (std::uint64_t k = 0; k < dimension(); ++k) im[k] = step(k);
        return im;
    }

    PermutationFlow inverse() const {
        auto im = state_images();
        std::vector<std::uint64_t> inv(im.size());
        for (std::uint64_t k = 0; k < im.size(); ++k) inv[im[k]] = k;
        return from_state_images(rank_, std::move(inv));
    }

    /// Disjoint cycles, each listed from its smallest element; a cycle of p
    /// elements is an orbit of dynamical period p, so every orbit recurs
    /// within 2^r steps.
    std::vector<std::vector<std::uint64_t>> cycles() const {
        auto im = state_images();
        std::vector<bool> seen(im.size(), false);
        std::vector<std::vector<std::uint64_t>> out;
        for (std::uint64_t k = 0; k < im.size(); ++k) {
            if (seen[k]) continue;
            std::vector<std::uint64_t> cyc;
            for (std::uint64_t j = k; !seen[j]; j = im[j]) {
                seen[j] = true;
                cyc.push_back(j);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

  private:
    explicit PermutationFlow(int rank) : rank_(rank) {
        if (rank < 1 || rank > 62) throw DomainError("flow rank out of range");
    }

    int rank_;
    std::vector<std::uint64_t> state_images_; // general flow
    std::vector<std::uint64_t> site_images_;  // signal flow, 0-based
};

/// Cycle notation "(0 1 3)(2)"; fixed points may be omitted.
inline std::vector<std::uint64_t> parse_cycles(std::string_view text, std::uint64_t n) {
    std::vector<std::uint64_t> images(n);
    std::iota(images.begin(), images.end(), 0);
    std::vector<bool> used(n, false);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == ',' || text[pos] == '\t'))
            ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
        if (text[pos] != '(') throw InvalidPermutation("expected '(' in cycle notation");
        ++pos;
        std::vector<std::uint64_t> cyc;
        skip_ws();
        while (pos < text.size() && text[pos] != ')') {
            if (!std::isdigit(static_cast<unsigned char>(text[pos])))
                throw InvalidPermutation("expected digit in cycle notation");
            std::uint64_t v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                v = v * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
            if (v >= n) throw InvalidPermutation("cycle element out of range");
            if (used[v]) throw InvalidPermutation("cycle element repeated");
            used[v] = true;
            cyc.push_back(v);
            skip_ws();
        }
        if (pos == text.size()) throw InvalidPermutation("unterminated cycle");
        ++pos; // ')'
        for (std::size_t i = 0; i < cyc.size(); ++i)
            images[cyc[i]] = cyc[(i + 1) % cyc.size()];
        skip_ws();
    }
    return images;
}

inline std::string format_cycles(const std::vector<std::vector<std::uint64_t>>& cycles) {
    std::ostringstream out;
    for (const auto& cyc : cycles) {
        out << '(';
        for (std::size_t i = 0; i < cyc.size(); ++i) out << (i ? " " : "") << cyc[i];
        out << ')';
    }
    return out.str();
}

/// "0 1 3 2" or "(0 1 3)(2)" → basis-state images of length n.
inline std::vector<std::uint64_t> parse_permutation(std::string_view text, std::uint64_t n) {
    std::size_t first = text.find_first_not_of(" \t");
    if (first != std::string_view::npos && text[first] == '(') {
        return parse_cycles(text, n);
    }
    std::vector<std::uint64_t> images;
    std::istringstream in{std::string(text)};
    std::uint64_t v;
    while (in >> v) images.push_back(v);
    if (!in.eof()) throw InvalidPermutation("bad image list");
    detail::require_bijection(images, n);
    return images;
}

/// Census of autonomous time-independent dynamics on a rank-r register.
struct DynamicsCount {
    BigInt all_maps;          // (2^r)^(2^r)
    BigInt permutation_flows; // (2^r)!
    BigInt signal_flows;      // r!
};

inline DynamicsCount count_dynamics(int r) {
    if (r < 1 || r > 20) throw DomainError("count_dynamics: rank out of range");
    const auto d = static_cast<unsigned>(1u << r);
    return {big_pow(BigInt(d), d), factorial(d), factorial(static_cast<unsigned>(r))};
}

/// Semi-unitarity check for classical evolutions: ŪU is the identity on the
/// source register exactly when the image states are pairwise distinct. The
/// reverse composition UŪ may still differ from the identity when the target
/// register is larger (rank-changing, irreversible dynamics).
inline bool check_semiunitary(const std::vector<RegisterState>& images) {
    std::set<RegisterState> distinct(images.begin(), images.end());
    return distinct.size() == images.size();
}

} // namespace pset
