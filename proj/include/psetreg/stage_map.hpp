#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "psetreg/errors.hpp"
#include "psetreg/labstate.hpp"

namespace pset {

/// One term of a rule image: amplitude times assignments on target sites.
struct RuleTerm {
    Amp amp;
    std::vector<std::pair<int, PBit>> writes; // site → Signal or Faulty, sorted by site

    friend bool operator==(const RuleTerm&, const RuleTerm&) = default;
};

/// One rewrite rule: the creation monomial Ā_{m1}…Ā_{mk} (a set of signal
/// sites) maps to a superposition of target assignments.
struct StageRule {
    std::vector<int> monomial; // sorted, distinct signal sites
    std::vector<RuleTerm> image;
};

/// One time step of labstate evolution, given by rewrite rules on creation
/// monomials. A term evolves by consuming its signal sites through exactly
/// one matching rule: an exact joint rule if present, otherwise the product
/// of single-site rules. Faulty sites are debris and pass through untouched;
/// signal sites never named by any rule pass through unchanged.
class StageMap {
  public:
    explicit StageMap(int register_size, std::string name = "")
        : size_(register_size), name_(std::move(name)) {}

    int register_size() const { return size_; }
    const std::string& name() const { return name_; }

    void add_rule(StageRule rule) {
        std::ranges::sort(rule.monomial);
        if (rule.monomial.empty()) throw WiringConflict("rule with empty monomial");
        for (int s : rule.monomial) check_site(s);
        for (auto& term : rule.image) {
            std::ranges::sort(term.writes);
            for (auto& [s, v] : term.writes) {
                check_site(s);
                if (v != PBit::Signal && v != PBit::Faulty)
                    throw WiringConflict("rule images may only write signal or faulty states");
            }
        }
        // Canonical image: terms ordered by target assignments, duplicates
        // merged, zero terms dropped.
        std::ranges::stable_sort(rule.image, {}, &RuleTerm::writes);
        std::vector<RuleTerm> image;
        for (RuleTerm& t : rule.image) {
            if (!image.empty() && image.back().writes == t.writes)
                image.back().amp += t.amp;
            else
                image.push_back(std::move(t));
        }
        std::erase_if(image, [](const RuleTerm& t) { return t.amp.is_zero(); });
        if (rules_.count(rule.monomial))
            throw WiringConflict("duplicate rule for a monomial within a stage");
        for (int s : rule.monomial) input_sites_.insert(s);
        rules_.emplace(rule.monomial, std::move(image));
    }

    const std::map<std::vector<int>, std::vector<RuleTerm>>& rules() const { return rules_; }

    /// The image of a source monomial as a labstate over the full register
    /// (all unwritten sites ground). Joint rules take precedence; otherwise
    /// the image is the product of the single-site images.
    Labstate image_state(const std::vector<int>& monomial) const {
        std::vector<int> m = monomial;
        std::ranges::sort(m);
        Labstate out;
        expand(m, Configuration::vacuum(size_), Amp(1),
               [&](Configuration c, Amp a) { out.add_term(std::move(c), a); });
        return out;
    }

    /// Linear extension over the terms of `state`.
    Labstate apply(const Labstate& state) const {
        Labstate out;
        for (const auto& [config, amp] : state.terms()) {
            // Split the configuration: signal sites named by some rule are
            // the monomial to consume; everything else is carried across.
            std::vector<int> monomial;
            Configuration carried = config;
            for (int s : config.signal_sites()) {
                if (input_sites_.count(s)) {
                    monomial.push_back(s);
                    carried.set(s, PBit::Ground);
                }
            }
            expand(monomial, carried, amp,
                   [&](Configuration c, const Amp& a) { out.add_term(std::move(c), a); });
        }
        return out;
    }

    /// Semi-unitarity on the rule table: every image normalized and images of
    /// distinct monomials orthogonal.
    bool check_isometry() const {
        std::vector<Labstate> images;
        images.reserve(rules_.size());
        for (const auto& [m, _] : rules_) images.push_back(image_state(m));
        const RealQ2 one{Rat(1), Rat(0)};
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (images[i].norm_sq() != one) return false;
            for (std::size_t j = i + 1; j < images.size(); ++j)
                if (!inner(images[i], images[j]).is_zero()) return false;
        }
        return true;
    }

    friend bool operator==(const StageMap&, const StageMap&) = default;

  private:
    void check_site(int s) const {
        if (s < 1 || s > size_)
            throw WiringConflict("rule references undeclared site " + std::to_string(s));
    }

    static Configuration merged(const Configuration& base,
                                const std::vector<std::pair<int, PBit>>& writes) {
        Configuration out = base;
        for (const auto& [s, v] : writes) {
            const PBit prev = out.at(s);
            if (prev == PBit::Faulty && v != PBit::Faulty)
                throw WiringConflict("rule writes a signal onto decommissioned site " +
                                     std::to_string(s));
            out.set(s, v);
        }
        return out;
    }

    /// Resolves `monomial` against the rule table and emits the image terms
    /// merged onto `carried`. Empty monomials pass through unchanged.
    template <class Emit>
    void expand(const std::vector<int>& monomial, const Configuration& carried, const Amp& amp,
                Emit&& emit) const {
        if (monomial.empty()) {
            emit(carried, amp);
            return;
        }
        if (auto it = rules_.find(monomial); it != rules_.end()) {
            for (const RuleTerm& t : it->second) emit(merged(carried, t.writes), amp * t.amp);
            return;
        }
        // No joint rule: factor into single-site rules, expanding the product
        // of images one site at a time.
        std::vector<std::pair<Configuration, Amp>> partial{{carried, amp}};
        for (int s : monomial) {
            auto it = rules_.find(std::vector<int>{s});
            if (it == rules_.end())
                throw UnmatchedMonomial(name_ + ": no rule matches creation monomial " +
                                        format_monomial(monomial));
            std::vector<std::pair<Configuration, Amp>> next;
            next.reserve(partial.size() * it->second.size());
            for (const auto& [cfg, a] : partial)
                for (const RuleTerm& t : it->second)
                    next.emplace_back(merged(cfg, t.writes), a * t.amp);
            partial = std::move(next);
        }
        for (auto& [cfg, a] : partial) emit(std::move(cfg), a);
    }

    static std::string format_monomial(const std::vector<int>& m) {
        std::string out;
        for (int s : m) out += (out.empty() ? "A" : "*A") + std::to_string(s);
        return out;
    }

    int size_;
    std::string name_;
    std::map<std::vector<int>, std::vector<RuleTerm>> rules_;
    std::set<int> input_sites_;
};

} // namespace pset
