// psetreg: exact simulator for detector registers of power-set bits.
//
// Subcommands: run, verify, table, flows, stockpile. Exit codes: 0 success,
// 1 verification failure, 2 parse or model error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "psetreg/psetreg.hpp"

namespace {

using namespace pset;

std::string format_rat(const Rat& p, bool as_float) {
    if (!as_float) return p.str();
    std::ostringstream out;
    out.precision(12);
    out << p.as_double();
    return out.str();
}

void print_run(const Scenario& sc, const std::string& label, std::optional<std::size_t> up_to,
               bool as_float) {
    std::cout << "scenario: " << label << " (" << sc.esds << " ESDs)\n";
    const auto history = sc.evolve(up_to);
    std::cout << "|Psi,0) = " << render_labstate(history[0], as_float) << "\n";
    for (std::size_t i = 1; i < history.size(); ++i) {
        const std::string& name = sc.stages[i - 1].name();
        std::cout << "|Psi," << i << ")" << (name.empty() ? "" : " after " + name) << " = "
                  << render_labstate(history[i], as_float) << "\n";
    }
    Rat total;
    for (const auto& [name, p] : sc.outcome_probabilities(history.back())) {
        std::cout << "P(" << name << ") = " << format_rat(p, as_float) << "\n";
        total += p;
    }
    if (!sc.outcomes.empty())
        std::cout << "outcome total = " << format_rat(total, as_float) << "\n";
}

void print_ev_experiment(bool as_float) {
    print_run(make_ev(Bomb::Dud), "ev-dud", std::nullopt, as_float);
    std::cout << "\n";
    print_run(make_ev(Bomb::Active), "ev-active", std::nullopt, as_float);
    std::cout << "\nrandom testing (mixture of active and dud):\n";
    std::cout << "  wA      P(Explode)  P(D6)   P(D7)\n";
    for (const Rat& wa : {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)}) {
        const auto rep = run_ev_mixture(wa);
        std::cout << "  " << format_rat(wa, as_float) << "\t  " << format_rat(rep.p_explode, as_float)
                  << "\t      " << format_rat(rep.p_d6, as_float) << "\t  "
                  << format_rat(rep.p_d7, as_float) << "\n";
    }
    std::cout << "\nstockpile yield of certified active bombs:\n";
    for (int n = 1; n <= 4; ++n)
        std::cout << "  after sweep " << n << ": " << format_rat(stockpile_yield(n), as_float)
                  << "\n";
    std::cout << "  limit: " << format_rat(stockpile_yield_limit(), as_float) << "\n";
}

int cmd_run(const std::string& target, std::optional<std::size_t> up_to, bool as_float) {
    if (target == "ev") {
        print_ev_experiment(as_float);
        return 0;
    }
    Scenario sc;
    std::string label = target;
    if (target == "ev-dud")
        sc = make_ev(Bomb::Dud);
    else if (target == "ev-active")
        sc = make_ev(Bomb::Active);
    else if (target == "hardy")
        sc = make_hardy();
    else {
        std::ifstream in(target);
        if (!in) {
            std::cerr << "error: cannot open scenario '" << target << "'\n";
            return 2;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        sc = parse_scenario(buf.str());
        for (const StageMap& st : sc.stages)
            if (!st.check_isometry())
                throw NonIsometricStage("stage '" + st.name() + "' is not an isometry");
    }
    print_run(sc, label, up_to, as_float);
    return 0;
}

int cmd_verify(const std::string& block) {
    const VerifyReport report = verify_block(block);
    for (const Check& c : report.checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.pass && !c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
    }
    if (!report.all_pass()) {
        for (const Check& c : report.checks)
            if (!c.pass) {
                std::cout << "first failure: " << c.name << "\n";
                break;
            }
        return 1;
    }
    std::cout << report.checks.size() << " checks passed\n";
    return 0;
}

int cmd_table(bool all_ops) {
    std::vector<std::pair<std::string, BitOp>> named{
        {"P0", bit_ops::project_ground},
        {"P1", bit_ops::project_signal},
        {"A", bit_ops::signal_annihilate},
        {"Abar", bit_ops::signal_create},
    };
    if (all_ops) {
        named.insert(named.begin(), {{"I", bit_ops::identity}, {"Z", bit_ops::annihilator}});
        named.push_back({"C", bit_ops::construct});
        named.push_back({"D", bit_ops::decommission});
    }
    std::cout << "products row*column (column applied first):\n"
              << product_table(named) << "census: " << enumerate_bitops().size()
              << " bit operators\n";
    return 0;
}

int cmd_flows(int rank, const std::string& perm_text, const std::string& sites_text) {
    if (rank < 1 || rank > 20) throw DomainError("rank out of range");
    const auto counts = count_dynamics(rank);
    std::cout << "rank " << rank << ": " << counts.all_maps << " evolution maps, "
              << counts.permutation_flows << " permutation flows, " << counts.signal_flows
              << " signal permutation flows\n";
    std::optional<PermutationFlow> flow;
    if (!sites_text.empty()) {
        std::vector<std::uint64_t> images;
        std::istringstream in(sites_text);
        std::uint64_t v;
        while (in >> v) images.push_back(v);
        flow = PermutationFlow::from_site_images(rank, images);
        std::cout << "signal flow over sites: conserves signality\n";
    } else if (!perm_text.empty()) {
        flow = PermutationFlow::from_state_images(
            rank, parse_permutation(perm_text, std::uint64_t{1} << rank));
    }
    if (flow) {
        const auto cycles = flow->cycles();
        std::cout << "cycles: " << format_cycles(cycles) << "\n";
        std::size_t longest = 0;
        for (const auto& c : cycles) longest = std::max(longest, c.size());
        std::cout << "periods:";
        for (const auto& c : cycles) std::cout << " " << c.size();
        std::cout << "\nrecurrence within " << longest << " steps (bound " << flow->dimension()
                  << ")\n";
        const PhysicalRegister reg = PhysicalRegister::ranked(rank);
        std::cout << "step table:\n";
        for (std::uint64_t k = 0; k < flow->dimension(); ++k)
            std::cout << "  " << reg.occupancy_string(k) << " -> "
                      << reg.occupancy_string(flow->step(k)) << "\n";
    }
    return 0;
}

int cmd_stockpile(int sweeps) {
    for (int n = 1; n <= sweeps; ++n)
        std::cout << "after sweep " << n << ": " << stockpile_yield(n).str() << "\n";
    std::cout << "limit: " << stockpile_yield_limit().str() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simulator for detector registers of power-set bits"};
    app.require_subcommand(1);

    std::string run_target;
    int run_stage = -1;
    bool run_float = false;
    auto* run = app.add_subcommand("run", "run a built-in scenario (ev, ev-dud, ev-active, "
                                          "hardy) or a scenario file");
    run->add_option("scenario", run_target, "scenario name or file path")->required();
    run->add_option("--stage", run_stage, "stop after this many stages");
    run->add_flag("--float", run_float, "decimal output (12 significant digits)");

    std::string verify_name;
    auto* verify = app.add_subcommand("verify", "check a block of known results");
    verify->add_option("block", verify_name, "ev | hardy | bitops | flows | all")->required();

    bool table_all = false;
    auto* table = app.add_subcommand("table", "print the bit operator product table");
    table->add_flag("--all", table_all, "include I, Z, C and D");

    int flows_rank = 2;
    std::string flows_perm;
    std::string flows_sites;
    auto* flows = app.add_subcommand("flows", "analyze a classical permutation flow");
    flows->add_option("--rank", flows_rank, "register rank r")->required();
    flows->add_option("--perm", flows_perm,
                      "basis permutation: cycle notation \"(0 1 3)(2)\" or image list");
    flows->add_option("--sites", flows_sites, "site permutation image list (1-based)");

    int stockpile_sweeps = 4;
    auto* stockpile = app.add_subcommand("stockpile", "bomb-tester stockpile yield by sweep");
    stockpile->add_option("--sweeps", stockpile_sweeps, "number of sweeps to tabulate");

    try {
        app.parse(argc, argv);
        if (run->parsed())
            return cmd_run(run_target,
                           run_stage < 0 ? std::nullopt
                                         : std::optional<std::size_t>(
                                               static_cast<std::size_t>(run_stage)),
                           run_float);
        if (verify->parsed()) return cmd_verify(verify_name);
        if (table->parsed()) return cmd_table(table_all);
        if (flows->parsed()) return cmd_flows(flows_rank, flows_perm, flows_sites);
        if (stockpile->parsed()) return cmd_stockpile(stockpile_sweeps);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const pset::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
