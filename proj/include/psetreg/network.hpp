#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "psetreg/errors.hpp"
#include "psetreg/projector.hpp"
#include "psetreg/stage_map.hpp"

namespace pset {

// Optical-network phase conventions: reflection flips the sign (phase π),
// transmission through a beamsplitter multiplies by i (phase π/2) together
// with the 1/√2 splitting factor. The scenario numbers depend on these, so
// they are constants, not inputs.
inline Amp transmit_amp() { return Amp::i() * Amp::inv_sqrt2(); }
inline Amp reflect_amp() { return Amp(-1) * Amp::inv_sqrt2(); }
inline Amp mirror_amp() { return Amp(-1); }

/// Splits the signal arriving at `in` over two output sites.
struct Beamsplitter {
    int in;
    int transmit;
    int reflect;
};

/// Redirects the signal arriving at `in`; a reflection, so phase −1.
struct Mirror {
    int in;
    int out;
};

/// A bomb wired to `site`. A dud leaves the site acting as a normal ESD; an
/// active bomb detonates on any arriving signal, leaving the site faulty.
struct BombCoupled {
    int site;
    bool active;
};

/// Two-signal coupling: simultaneous signals at the pair annihilate, leaving
/// both sites decommissioned. Overrides the sites' single-signal rules.
struct AnnihilationVertex {
    int a;
    int b;
};

using Component = std::variant<Beamsplitter, Mirror, BombCoupled, AnnihilationVertex>;

/// One stage of components; inputs must be consumed at most once per stage.
using Stage = std::vector<Component>;

struct Network {
    int esds = 0;
    std::vector<Stage> stages;
};

/// Compiles one stage of components into a stage map and verifies it is an
/// isometry on its rule table.
inline StageMap compile_stage(int esds, const Stage& stage, const std::string& name = "") {
    StageMap map(esds, name);

    // Active bombs rewrite "signal lands on the site" into "site is faulty".
    std::set<int> armed;
    for (const Component& comp : stage)
        if (const auto* bomb = std::get_if<BombCoupled>(&comp))
            if (bomb->active) armed.insert(bomb->site);

    auto write_for = [&](int target) -> std::pair<int, PBit> {
        return {target, armed.count(target) ? PBit::Faulty : PBit::Signal};
    };

    std::set<int> consumed;
    auto consume = [&](int in) {
        if (!consumed.insert(in).second)
            throw WiringConflict("site " + std::to_string(in) +
                                 " consumed twice in stage " + name);
    };

    for (const Component& comp : stage) {
        if (const auto* bs = std::get_if<Beamsplitter>(&comp)) {
            consume(bs->in);
            map.add_rule({{bs->in},
                          {RuleTerm{transmit_amp(), {write_for(bs->transmit)}},
                           RuleTerm{reflect_amp(), {write_for(bs->reflect)}}}});
        } else if (const auto* mr = std::get_if<Mirror>(&comp)) {
            consume(mr->in);
            map.add_rule({{mr->in}, {RuleTerm{mirror_amp(), {write_for(mr->out)}}}});
        } else if (const auto* ann = std::get_if<AnnihilationVertex>(&comp)) {
            map.add_rule({{ann->a, ann->b},
                          {RuleTerm{Amp(1),
                                    {{ann->a, PBit::Faulty}, {ann->b, PBit::Faulty}}}}});
        }
        // BombCoupled handled above; a dud contributes nothing.
    }

    if (!map.check_isometry())
        throw NonIsometricStage("compiled stage " + name + " is not an isometry");
    return map;
}

inline std::vector<StageMap> compile(const Network& net) {
    std::vector<StageMap> out;
    out.reserve(net.stages.size());
    for (std::size_t i = 0; i < net.stages.size(); ++i)
        out.push_back(compile_stage(net.esds, net.stages[i], "stage " + std::to_string(i + 1)));
    return out;
}

/// A runnable experiment: declared register, initial labstate, ordered stage
/// maps, and named outcome questions.
struct NamedOutcome {
    std::string name;
    Projector projector;

    friend bool operator==(const NamedOutcome&, const NamedOutcome&) = default;
};

struct Scenario {
    int esds = 0;
    Labstate initial;
    std::vector<StageMap> stages;
    std::vector<NamedOutcome> outcomes;

    /// States after 0, 1, …, n stages (index 0 is the initial state).
    std::vector<Labstate> evolve(std::optional<std::size_t> up_to = std::nullopt) const {
        const std::size_t n = std::min(up_to.value_or(stages.size()), stages.size());
        std::vector<Labstate> history{initial};
        for (std::size_t i = 0; i < n; ++i) history.push_back(stages[i].apply(history.back()));
        return history;
    }

    Labstate final_state() const { return evolve().back(); }

    std::vector<std::pair<std::string, Rat>> outcome_probabilities(const Labstate& state) const {
        std::vector<std::pair<std::string, Rat>> out;
        out.reserve(outcomes.size());
        for (const auto& o : outcomes) out.emplace_back(o.name, probability(state, o.projector));
        return out;
    }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

} // namespace pset
