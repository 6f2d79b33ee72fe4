#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "psetreg/flows.hpp"
#include "psetreg/scenarios.hpp"
#include "psetreg/text_format.hpp"

namespace pset {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail; // filled on failure
};

struct VerifyReport {
    std::vector<Check> checks;

    bool all_pass() const {
        return std::ranges::all_of(checks, [](const Check& c) { return c.pass; });
    }

    void add(const std::string& name, bool pass, const std::string& detail = "") {
        checks.push_back({name, pass, pass ? "" : detail});
    }

    void merge(const VerifyReport& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }
};

namespace verify_detail {

/// The four basic operators and their expected product table, row∘column.
/// Z marks the annihilator slot.
inline const std::vector<std::pair<std::string, BitOp>>& basic_ops() {
    static const std::vector<std::pair<std::string, BitOp>> ops{
        {"P0", bit_ops::project_ground},
        {"P1", bit_ops::project_signal},
        {"A", bit_ops::signal_annihilate},
        {"Abar", bit_ops::signal_create},
    };
    return ops;
}

inline const std::array<std::array<std::string, 4>, 4>& expected_table() {
    static const std::array<std::array<std::string, 4>, 4> t{{
        {"P0", "Z", "A", "Z"},
        {"Z", "P1", "Z", "Abar"},
        {"Z", "A", "Z", "P0"},
        {"Abar", "Z", "P1", "Z"},
    }};
    return t;
}

inline BitOp op_by_name(const std::string& n) {
    if (n == "Z") return bit_ops::annihilator;
    for (const auto& [name, op] : basic_ops())
        if (name == n) return op;
    throw DomainError("unknown operator name " + n);
}

} // namespace verify_detail

/// Single-bit operator algebra: the basic product table, its isomorphism with
/// the qubit operator table, the bracket rule, and the full 256-operator
/// census with its matrix representation.
inline VerifyReport verify_bitops() {
    using namespace verify_detail;
    VerifyReport r;

    bool table_ok = true;
    std::string table_detail;
    for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 4; ++col) {
            const BitOp got = compose(basic_ops()[row].second, basic_ops()[col].second);
            const BitOp want = op_by_name(expected_table()[row][col]);
            if (got != want) {
                table_ok = false;
                table_detail = basic_ops()[row].first + "·" + basic_ops()[col].first;
            }
        }
    r.add("basic operator product table (16 entries)", table_ok, table_detail);

    // Qubit products p^i, p^1, a, a+ over a 2x2 integer matrix representation;
    // the zero matrix corresponds to the annihilator slot.
    using M2 = std::array<std::array<int, 2>, 2>;
    const M2 p0{{{1, 0}, {0, 0}}};
    const M2 p1{{{0, 0}, {0, 1}}};
    const M2 a{{{0, 1}, {0, 0}}};
    const M2 ap{{{0, 0}, {1, 0}}};
    const M2 zero{{{0, 0}, {0, 0}}};
    const std::array<M2, 4> qubit{p0, p1, a, ap};
    auto mul2 = [](const M2& x, const M2& y) {
        M2 z{};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) z[i][j] += x[i][k] * y[k][j];
        return z;
    };
    auto qubit_slot = [&](const M2& m) -> int {
        if (m == zero) return -1; // the Z slot
        for (int i = 0; i < 4; ++i)
            if (m == qubit[i]) return i;
        return -2;
    };
    bool iso_ok = true;
    for (int row = 0; row < 4 && iso_ok; ++row)
        for (int col = 0; col < 4 && iso_ok; ++col) {
            const int qslot = qubit_slot(mul2(qubit[row], qubit[col]));
            const BitOp got = compose(basic_ops()[row].second, basic_ops()[col].second);
            const BitOp want =
                qslot == -1 ? bit_ops::annihilator
                            : (qslot >= 0 ? basic_ops()[qslot].second : BitOp::from_code(255));
            iso_ok = qslot != -2 && got == want;
        }
    r.add("entry-for-entry isomorphism with the qubit operator table", iso_ok);

    bool bracket_ok = true;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            bracket_ok &= bracket(Question{i}, static_cast<PBit>(j)) == (i == j ? 1 : 0);
    r.add("bracket rule (i|j) = delta_ij (16 pairs)", bracket_ok);

    const auto ops = enumerate_bitops();
    std::set<int> codes;
    for (const BitOp& op : ops) codes.insert(op.code());
    r.add("bit operator census is exactly 256",
          ops.size() == 256 && codes.size() == 256 && *codes.begin() == 0 &&
              *codes.rbegin() == 255);

    bool named_present = true;
    for (const BitOp& want :
         {bit_ops::identity, bit_ops::annihilator, bit_ops::project_ground,
          bit_ops::project_signal, bit_ops::signal_annihilate, bit_ops::signal_create,
          bit_ops::construct, bit_ops::decommission})
        named_present &= codes.count(want.code()) == 1;
    r.add("census contains I, Z, P0, P1, A, Abar, C, D", named_present);

    bool closed = true;
    bool matrix_hom = true;
    for (const BitOp& o2 : ops)
        for (const BitOp& o1 : ops) {
            const BitOp prod = compose(o2, o1);
            closed &= codes.count(prod.code()) == 1;
            matrix_hom &= matrix_of(prod) == matrix_mul(matrix_of(o2), matrix_of(o1));
        }
    r.add("composition closed over all 65536 pairs", closed);
    r.add("[O2 O1] = [O2][O1] over all 65536 pairs", matrix_hom);

    return r;
}

/// Classical flows: recurrence within 2^r steps (exhaustive at rank 2,
/// sampled at rank 3), signality conservation of signal permutation dynamics
/// up to rank 5, and the dynamics census.
inline VerifyReport verify_flows() {
    VerifyReport r;

    auto orbit_recurs = [](const PermutationFlow& f) {
        const std::uint64_t d = f.dimension();
        for (std::uint64_t k = 0; k < d; ++k) {
            std::uint64_t x = k;
            bool back = false;
            for (std::uint64_t t = 0; t < d; ++t) {
                x = f.step(x);
                if (x == k) {
                    back = true;
                    break;
                }
            }
            if (!back) return false;
        }
        return true;
    };

    {
        std::vector<std::uint64_t> images{0, 1, 2, 3};
        bool ok = true;
        int count = 0;
        do {
            ok &= orbit_recurs(PermutationFlow::from_state_images(2, images));
            ++count;
        } while (std::next_permutation(images.begin(), images.end()));
        r.add("rank-2 recurrence within 4 steps, all 24 permutation flows", ok && count == 24);
    }

    {
        std::mt19937_64 rng(20251109);
        std::vector<std::uint64_t> images{0, 1, 2, 3, 4, 5, 6, 7};
        bool ok = true;
        const int samples = 10000;
        for (int s = 0; s < samples; ++s) {
            std::shuffle(images.begin(), images.end(), rng);
            ok &= orbit_recurs(PermutationFlow::from_state_images(3, images));
        }
        r.add("rank-3 recurrence within 8 steps, 10000 sampled flows", ok);
    }

    {
        bool ok = true;
        for (int rank = 1; rank <= 5; ++rank) {
            std::vector<std::uint64_t> sites(static_cast<std::size_t>(rank));
            std::iota(sites.begin(), sites.end(), 1);
            do {
                const auto f = PermutationFlow::from_site_images(rank, sites);
                const PhysicalRegister reg = PhysicalRegister::ranked(rank);
                for (std::uint64_t k = 0; k < f.dimension(); ++k)
                    ok &= reg.signality(f.step(k)) == reg.signality(k);
            } while (std::next_permutation(sites.begin(), sites.end()));
        }
        r.add("signality conserved by all r! signal flows, r <= 5", ok);
    }

    {
        const auto c2 = count_dynamics(2);
        const auto c3 = count_dynamics(3);
        r.add("dynamics census at rank 2: 256 maps, 24 flows, 2 signal flows",
              c2.all_maps == 256 && c2.permutation_flows == 24 && c2.signal_flows == 2);
        r.add("dynamics census at rank 3: 16777216 maps",
              c3.all_maps == 16777216 && c3.permutation_flows == factorial(8) &&
                  c3.signal_flows == 6);
    }

    {
        const auto ident = PermutationFlow::identity(3);
        const auto idc = ident.cycles();
        bool ok = idc.size() == 8;
        for (const auto& c : idc) ok &= c.size() == 1;
        const auto full = PermutationFlow::from_state_images(3, {1, 2, 3, 4, 5, 6, 7, 0});
        ok &= full.cycles().size() == 1 && full.cycles()[0].size() == 8;
        r.add("cycle decomposition: identity 2^r fixed points, full cycle period 2^r", ok);
    }

    return r;
}

/// The bomb-tester experiment: both pure networks, the random-testing
/// mixture, and the stockpile yield.
inline VerifyReport verify_ev() {
    VerifyReport r;

    const Scenario dud = make_ev(Bomb::Dud);
    const Scenario active = make_ev(Bomb::Active);

    bool isometric = true;
    for (const auto& sc : {dud, active})
        for (const auto& st : sc.stages) isometric &= st.check_isometry();
    r.add("all compiled EV stage maps are isometries", isometric);

    const Labstate dud_final = dud.final_state();
    const auto dp = dud.outcome_probabilities(dud_final);
    r.add("dud run: P(Explode)=0, P(D6)=1, P(D7)=0",
          dp[0].second == Rat(0) && dp[1].second == Rat(1) && dp[2].second == Rat(0));
    r.add("dud final state equals Abar6|0) up to a global phase",
          equal_up_to_global_phase(dud_final, Labstate::monomial(7, {6})));

    const Labstate active_final = active.final_state();
    const auto ap = active.outcome_probabilities(active_final);
    r.add("active run: P(Explode)=1/2, P(D6)=1/4, P(D7)=1/4",
          ap[0].second == Rat(1, 2) && ap[1].second == Rat(1, 4) && ap[2].second == Rat(1, 4));

    bool mix_ok = true;
    for (const Rat& wa : {Rat(0), Rat(1, 2), Rat(1)}) {
        const auto rep = run_ev_mixture(wa);
        const Rat wd = Rat(1) - wa;
        mix_ok &= rep.p_d6 == wa / Rat(4) + wd && rep.p_d7 == wa / Rat(4);
    }
    r.add("mixture: P(D6)=wA/4+wD and P(D7)=wA/4 at wA in {0, 1/2, 1}", mix_ok);

    bool dud_d7_zero = probability(dud_final, ev_outcomes()[2].projector) == Rat(0);
    r.add("a detector-7 signal certifies the active branch (dud gives exactly 0)", dud_d7_zero);

    bool yield_ok = stockpile_yield(1) == Rat(1, 4) && stockpile_yield(2) == Rat(5, 16) &&
                    stockpile_yield_limit() == Rat(1, 3);
    Rat prev;
    for (int n = 1; n <= 12; ++n) {
        const Rat y = stockpile_yield(n);
        yield_ok &= y > prev && y < Rat(1, 3);
        prev = y;
    }
    r.add("stockpile yield: 1/4 after one sweep, monotone, bounded by limit 1/3", yield_ok);

    return r;
}

/// The Hardy paradox experiment: the exact final-state coefficients and the
/// joint outcome table.
inline VerifyReport verify_hardy() {
    VerifyReport r;

    const Scenario hardy = make_hardy();
    bool isometric = true;
    for (const auto& st : hardy.stages) isometric &= st.check_isometry();
    r.add("all Hardy stage maps are isometries", isometric);

    const Labstate psi2 = hardy.final_state();

    Labstate expected;
    expected = expected + Labstate::monomial(9, {}, {3, 4}, Amp(Rat(1, 2)));
    expected = expected + Labstate::monomial(9, {6, 8}, {}, Amp(Rat(0), Rat(1, 4), 0, 0));
    expected = expected + Labstate::monomial(9, {7, 8}, {}, Amp(Rat(-1, 4)));
    expected = expected + Labstate::monomial(9, {6, 9}, {}, Amp(Rat(-3, 4)));
    expected = expected + Labstate::monomial(9, {7, 9}, {}, Amp(Rat(0), Rat(1, 4), 0, 0));
    r.add("final state has coefficients {1/2 D3D4, i/4, -1/4, -3/4, i/4}", psi2 == expected);

    const auto p = hardy.outcome_probabilities(psi2);
    r.add("P(6,8) = P(7,8) = P(7,9) = 1/16",
          p[0].second == Rat(1, 16) && p[1].second == Rat(1, 16) && p[2].second == Rat(1, 16));
    r.add("P(6,9) = 9/16", p[3].second == Rat(9, 16));
    r.add("P(Annihilation) = 1/4", p[4].second == Rat(1, 4));

    Rat total;
    for (const auto& [_, v] : p) total += v;
    r.add("outcome probabilities sum to exactly 1", total == Rat(1));

    r.add("the paradox: P(7,8) is not zero", p[1].second != Rat(0));

    // Swapping the positron and electron arms (2<->5, 3<->4, 6<->9, 7<->8)
    // relabels the network onto itself, so swapped outcomes must carry the
    // original outcomes' probabilities.
    auto swap_site = [](int s) {
        switch (s) {
            case 2: return 5;
            case 5: return 2;
            case 3: return 4;
            case 4: return 3;
            case 6: return 9;
            case 9: return 6;
            case 7: return 8;
            case 8: return 7;
            default: return s;
        }
    };
    std::vector<StageMap> swapped_stages;
    for (const StageMap& st : hardy.stages) {
        StageMap mapped(9, st.name());
        for (const auto& [mono, image] : st.rules()) {
            StageRule rule;
            for (int s : mono) rule.monomial.push_back(swap_site(s));
            for (const RuleTerm& t : image) {
                RuleTerm nt{t.amp, {}};
                for (const auto& [s, v] : t.writes) nt.writes.emplace_back(swap_site(s), v);
                rule.image.push_back(std::move(nt));
            }
            mapped.add_rule(std::move(rule));
        }
        swapped_stages.push_back(std::move(mapped));
    }
    bool network_symmetric = swapped_stages.size() == hardy.stages.size();
    for (std::size_t i = 0; network_symmetric && i < swapped_stages.size(); ++i)
        network_symmetric = swapped_stages[i] == hardy.stages[i];
    bool outcomes_symmetric = true;
    for (const auto& o : hardy.outcomes) {
        Projector mapped;
        for (int s : o.projector.signal_sites()) mapped.require_signal(swap_site(s));
        for (int s : o.projector.faulty_sites()) mapped.require_faulty(swap_site(s));
        for (int s : o.projector.ground_sites()) mapped.require_ground(swap_site(s));
        if (o.projector.no_other_signal()) mapped.require_no_other_signal();
        outcomes_symmetric &= probability(psi2, mapped) == probability(psi2, o.projector);
    }
    r.add("outcome table invariant under swapping the electron/positron arms",
          network_symmetric && outcomes_symmetric);

    return r;
}

inline VerifyReport verify_block(const std::string& name) {
    if (name == "bitops") return verify_bitops();
    if (name == "flows") return verify_flows();
    if (name == "ev") return verify_ev();
    if (name == "hardy") return verify_hardy();
    if (name == "all") {
        VerifyReport r;
        r.merge(verify_bitops());
        r.merge(verify_flows());
        r.merge(verify_ev());
        r.merge(verify_hardy());
        return r;
    }
    throw DomainError("unknown verify block '" + name + "' (ev|hardy|bitops|flows|all)");
}

} // namespace pset
