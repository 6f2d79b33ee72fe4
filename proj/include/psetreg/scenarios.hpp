#pragma once

#include <string>
#include <vector>

#include "psetreg/network.hpp"

namespace pset {

// ---------------------------------------------------------------------------
// Elitzur-Vaidman bomb tester, on the seven-ESD Mach-Zehnder network:
// source 1 splits over 2/3, mirrors fold 2→5 and 3→4, and the second
// beamsplitter recombines 4/5 onto detectors 6/7. The bomb sits at ESD 2.
// ---------------------------------------------------------------------------

enum class Bomb { Dud, Active };

inline std::vector<NamedOutcome> ev_outcomes() {
    return {
        {"Explode", Projector{}.require_faulty(2).require_no_other_signal()},
        {"D6", Projector{}.require_signal(6)},
        {"D7", Projector{}.require_signal(7)},
    };
}

inline Scenario make_ev(Bomb bomb) {
    const int esds = 7;
    Network net{esds,
                {
                    {Beamsplitter{1, 2, 3}, BombCoupled{2, bomb == Bomb::Active}},
                    {Mirror{2, 5}, Mirror{3, 4}},
                    {Beamsplitter{4, 6, 7}, Beamsplitter{5, 7, 6}},
                }};
    Scenario sc;
    sc.esds = esds;
    sc.stages = compile(net);
    sc.outcomes = ev_outcomes();
    // An armed bomb replaces ESD 2's detector function outright, so the run
    // starts with that site already decommissioned.
    sc.initial = bomb == Bomb::Active ? Labstate::monomial(esds, {1}, {2})
                                      : Labstate::monomial(esds, {1});
    return sc;
}

/// ρ(n) = ω_A |A,n)(A,n| + ω_D |D,n)(D,n| after all three stages.
inline DensityState ev_mixture(const Rat& omega_active) {
    const Rat omega_dud = Rat(1) - omega_active;
    return DensityState{{
        {omega_active, make_ev(Bomb::Active).final_state()},
        {omega_dud, make_ev(Bomb::Dud).final_state()},
    }};
}

struct EvMixtureReport {
    Rat p_explode;
    Rat p_d6;
    Rat p_d7;
};

inline EvMixtureReport run_ev_mixture(const Rat& omega_active) {
    const DensityState rho = ev_mixture(omega_active);
    const auto outs = ev_outcomes();
    return {density_probability(rho, outs[0].projector),
            density_probability(rho, outs[1].projector),
            density_probability(rho, outs[2].projector)};
}

/// Fraction of the stockpile's active bombs certified usable (a detector-7
/// signal) after `sweeps` passes, retesting the detector-6 coincidences each
/// time: Σ_{n=1..sweeps} (1/4)^n.
inline Rat stockpile_yield(int sweeps) {
    if (sweeps < 1) throw DomainError("stockpile_yield: sweeps must be >= 1");
    Rat acc;
    Rat term(1);
    const Rat quarter(1, 4);
    for (int n = 1; n <= sweeps; ++n) {
        term *= quarter;
        acc += term;
    }
    return acc;
}

/// Limit of unbounded retesting: one third of the active bombs.
inline Rat stockpile_yield_limit() { return Rat(1, 3); }

// ---------------------------------------------------------------------------
// Hardy paradox, on nine ESDs. The pair source feeds positron paths 2/3 and
// electron paths 5/4; the inner arms 3 and 4 cross at an annihilation vertex;
// second beamsplitters recombine onto detectors 6/7 (positron) and 8/9
// (electron).
// ---------------------------------------------------------------------------

inline Scenario make_hardy() {
    const int esds = 9;
    Scenario sc;
    sc.esds = esds;
    sc.initial = Labstate::monomial(esds, {1});

    // The pair split is a genuinely two-particle rule (one source monomial to
    // a product of two one-particle superpositions), so stage 1 is written as
    // an explicit rule rather than wired from one-input components.
    StageMap pair_split(esds, "pair split");
    {
        std::vector<RuleTerm> image;
        const Amp t = transmit_amp();
        const Amp r = reflect_amp();
        const std::vector<std::pair<Amp, int>> positron{{t, 2}, {r, 3}};
        const std::vector<std::pair<Amp, int>> electron{{t, 5}, {r, 4}};
        for (const auto& [pa, ps] : positron)
            for (const auto& [ea, es] : electron)
                image.push_back(RuleTerm{pa * ea, {{std::min(ps, es), PBit::Signal},
                                                   {std::max(ps, es), PBit::Signal}}});
        pair_split.add_rule({{1}, std::move(image)});
    }
    if (!pair_split.check_isometry()) throw NonIsometricStage("hardy pair split");
    sc.stages.push_back(std::move(pair_split));

    sc.stages.push_back(compile_stage(esds,
                                      {
                                          Beamsplitter{2, 7, 6},
                                          Beamsplitter{3, 6, 7},
                                          Beamsplitter{4, 9, 8},
                                          Beamsplitter{5, 8, 9},
                                          AnnihilationVertex{3, 4},
                                      },
                                      "recombine"));

    sc.outcomes = {
        {"6,8", Projector{}.require_signal(6).require_signal(8)},
        {"7,8", Projector{}.require_signal(7).require_signal(8)},
        {"7,9", Projector{}.require_signal(7).require_signal(9)},
        {"6,9", Projector{}.require_signal(6).require_signal(9)},
        {"Annihilation",
         Projector{}.require_faulty(3).require_faulty(4).require_no_other_signal()},
    };
    return sc;
}

} // namespace pset
