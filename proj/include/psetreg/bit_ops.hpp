#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "psetreg/errors.hpp"

namespace pset {

/// The four power-set states of one elementary signal detector (ESD).
/// The numeric encoding is fixed: register basis indexing depends on it.
enum class PBit : std::uint8_t {
    Ground = 0, // exists, working, no signal
    Signal = 1, // exists, working, signal seen
    Faulty = 2, // exists but decommissioned / unreliable
    Empty = 3,  // does not exist
};

constexpr std::array<PBit, 4> kAllPBits{PBit::Ground, PBit::Signal, PBit::Faulty, PBit::Empty};

constexpr int index_of(PBit s) { return static_cast<int>(s); }

inline const char* name_of(PBit s) {
    switch (s) {
        case PBit::Ground: return "ground";
        case PBit::Signal: return "signal";
        case PBit::Faulty: return "faulty";
        case PBit::Empty: return "empty";
    }
    return "?";
}

/// One of the four binary questions (i|. Asking it of an answer state |j)
/// yields the Kronecker delta.
struct Question {
    int index = 0; // 0..3
};

constexpr int bracket(Question q, PBit s) { return q.index == index_of(s) ? 1 : 0; }

// --- Boolean algebra -------------------------------------------------------
//
// States are subsets of {0,1}: Empty ≙ {}, Ground ≙ {0}, Signal ≙ {1},
// Faulty ≙ {0,1}. Union/intersection/complement act set-wise. The two-bit
// mask below encodes membership of 0 (bit 0) and 1 (bit 1).

constexpr std::uint8_t subset_mask(PBit s) {
    switch (s) {
        case PBit::Ground: return 0b01;
        case PBit::Signal: return 0b10;
        case PBit::Faulty: return 0b11;
        case PBit::Empty: return 0b00;
    }
    return 0;
}

constexpr PBit from_subset_mask(std::uint8_t m) {
    constexpr std::array<PBit, 4> table{PBit::Empty, PBit::Ground, PBit::Signal, PBit::Faulty};
    return table[m & 0b11];
}

constexpr PBit set_union(PBit a, PBit b) { return from_subset_mask(subset_mask(a) | subset_mask(b)); }
constexpr PBit set_intersect(PBit a, PBit b) { return from_subset_mask(subset_mask(a) & subset_mask(b)); }
constexpr PBit set_complement(PBit a) { return from_subset_mask(~subset_mask(a) & 0b11); }

// --- Bit operators ---------------------------------------------------------

/// A bit operator: any total map from the power set back into itself.
/// Stored as the image table image[j] = O|j). There are exactly 4^4 = 256.
struct BitOp {
    std::array<PBit, 4> image{PBit::Ground, PBit::Signal, PBit::Faulty, PBit::Empty};

    constexpr PBit operator()(PBit s) const { return image[index_of(s)]; }

    friend constexpr bool operator==(const BitOp&, const BitOp&) = default;

    /// Base-4 code in [0,255]; enumeration and table lookups key on this.
    constexpr int code() const {
        return index_of(image[0]) + 4 * index_of(image[1]) + 16 * index_of(image[2]) +
               64 * index_of(image[3]);
    }

    static constexpr BitOp from_code(int c) {
        return BitOp{{static_cast<PBit>(c & 3), static_cast<PBit>((c >> 2) & 3),
                      static_cast<PBit>((c >> 4) & 3), static_cast<PBit>((c >> 6) & 3)}};
    }
};

constexpr PBit apply(const BitOp& op, PBit s) { return op(s); }

/// Composition: the result applies o1 first, then o2, so [o2 o1] = [o2][o1].
constexpr BitOp compose(const BitOp& o2, const BitOp& o1) {
    BitOp r{};
    for (PBit s : kAllPBits) r.image[index_of(s)] = o2(o1(s));
    return r;
}

namespace bit_ops {

constexpr BitOp identity{{PBit::Ground, PBit::Signal, PBit::Faulty, PBit::Empty}};
/// Z: destroys an ESD and removes all traces of it.
constexpr BitOp annihilator{{PBit::Empty, PBit::Empty, PBit::Empty, PBit::Empty}};
/// P0, P1: relative projections onto the ground / signal state.
constexpr BitOp project_ground{{PBit::Ground, PBit::Empty, PBit::Empty, PBit::Empty}};
constexpr BitOp project_signal{{PBit::Empty, PBit::Signal, PBit::Empty, PBit::Empty}};
/// A: signal annihilation (1 → 0); Ā: signal creation (0 → 1). Both nilpotent.
constexpr BitOp signal_annihilate{{PBit::Empty, PBit::Ground, PBit::Empty, PBit::Empty}};
constexpr BitOp signal_create{{PBit::Signal, PBit::Empty, PBit::Empty, PBit::Empty}};
/// C: builds (or repairs) an ESD and leaves it ready in its ground state.
constexpr BitOp construct{{PBit::Ground, PBit::Ground, PBit::Ground, PBit::Ground}};
/// D: decommissions an existing ESD, leaving faulty-state debris behind.
constexpr BitOp decommission{{PBit::Faulty, PBit::Faulty, PBit::Faulty, PBit::Empty}};

} // namespace bit_ops

/// 4×4 0/1 matrix representation acting on column states; composition of
/// operators corresponds to the ordinary matrix product.
struct BitMatrix {
    std::array<std::array<int, 4>, 4> m{};

    friend constexpr bool operator==(const BitMatrix&, const BitMatrix&) = default;
};

constexpr BitMatrix matrix_of(const BitOp& op) {
    BitMatrix r{};
    for (int j = 0; j < 4; ++j) r.m[index_of(op.image[j])][j] = 1;
    return r;
}

constexpr BitMatrix matrix_mul(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int acc = 0;
            for (int k = 0; k < 4; ++k) acc += a.m[i][k] * b.m[k][j];
            r.m[i][j] = acc;
        }
    return r;
}

/// All 256 distinct bit operators, in code order.
inline std::vector<BitOp> enumerate_bitops() {
    std::vector<BitOp> ops;
    ops.reserve(256);
    for (int c = 0; c < 256; ++c) ops.push_back(BitOp::from_code(c));
    return ops;
}

/// Aligned text grid of pairwise products, laid out like the operator product
/// tables: entry (row, col) is row∘col, i.e. col applied first. Products
/// outside the named set render as their image tuple, e.g. [2223].
inline std::string product_table(const std::vector<std::pair<std::string, BitOp>>& named) {
    auto find_name = [&](const BitOp& op) -> std::string {
        for (const auto& [n, o] : named)
            if (o == op) return n;
        if (op == bit_ops::annihilator) return "Z";
        std::string t = "[";
        for (PBit v : op.image) t += static_cast<char>('0' + index_of(v));
        return t + "]";
    };
    std::size_t w = 6; // wide enough for an image tuple
    for (const auto& [n, _] : named) w = std::max(w, n.size());
    auto pad = [&](const std::string& s) {
        return s + std::string(w + 2 - s.size(), ' ');
    };
    std::string out = pad("");
    for (const auto& [n, _] : named) out += pad(n);
    out += "\n";
    for (const auto& [rn, rop] : named) {
        out += pad(rn);
        for (const auto& [cn, cop] : named) out += pad(find_name(compose(rop, cop)));
        out += "\n";
    }
    return out;
}

} // namespace pset
