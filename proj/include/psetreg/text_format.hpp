#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "psetreg/errors.hpp"
#include "psetreg/network.hpp"

namespace pset {

// ---------------------------------------------------------------------------
// Amplitude grammar. An amplitude literal is a parenthesized signed sum of
// products over integers and the symbols `i` and `r2` (√2), with `*` and `/`:
// (1), (-3/4), (i/2), (i/r2), (r2*i/2), (1/2+i/2).
// ---------------------------------------------------------------------------

namespace detail {

class AmpScanner {
  public:
    AmpScanner(std::string_view text, int line, int col0)
        : text_(text), line_(line), col0_(col0) {}

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool done() {
        skip_ws();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    char take() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of amplitude");
        return text_[pos_++];
    }

    bool take_if(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Amp parse_sum() {
        Amp acc;
        bool first = true;
        while (true) {
            int sign = 1;
            if (take_if('-'))
                sign = -1;
            else if (take_if('+'))
                sign = 1;
            else if (!first)
                break;
            acc += (sign < 0 ? -parse_product() : parse_product());
            first = false;
            char c = peek();
            if (c != '+' && c != '-') break;
        }
        return acc;
    }

    Amp parse_product() {
        Amp acc = parse_atom();
        while (true) {
            if (take_if('*'))
                acc *= parse_atom();
            else if (take_if('/')) {
                Amp d = parse_atom();
                if (d.is_zero()) fail("division by zero in amplitude");
                acc = acc / d;
            } else
                break;
        }
        return acc;
    }

    Amp parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of amplitude");
        char c = text_[pos_];
        if (c == 'i') {
            ++pos_;
            return Amp::i();
        }
        if (c == 'r') {
            if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '2') fail("expected r2");
            pos_ += 2;
            return Amp::sqrt2();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                v = v * 10 + (text_[pos_++] - '0');
            return Amp(Rat(v, BigInt(1)));
        }
        fail(std::string("unexpected character '") + c + "' in amplitude");
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col0_ + static_cast<int>(pos_));
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
    int col0_;
};

} // namespace detail

/// Parses an amplitude literal without its surrounding parentheses.
inline Amp parse_amp(std::string_view body, int line = 0, int col = 1) {
    detail::AmpScanner sc(body, line, col);
    Amp v = sc.parse_sum();
    if (!sc.done()) sc.fail("trailing characters in amplitude");
    return v;
}

/// Canonical rendering, e.g. (-3/4), (i/2), (r2*i/2), (1/2+i/2). Exact; never
/// a decimal. parse_amp(render_amp(x)) == x for every x.
inline std::string render_amp(const Amp& a) {
    std::string out;
    auto piece = [&](const Rat& q, const char* symbol) {
        if (q.is_zero()) return;
        const bool neg = q.is_negative();
        out += out.empty() ? (neg ? "-" : "") : (neg ? "-" : "+");
        const BigInt mag = boost::multiprecision::abs(q.num());
        std::string core;
        if (*symbol == '\0')
            core = mag.str();
        else if (mag == 1)
            core = symbol;
        else
            core = mag.str() + "*" + symbol;
        if (q.den() != 1) core += "/" + q.den().str();
        out += core;
    };
    piece(a.c1(), "");
    piece(a.ci(), "i");
    piece(a.cr(), "r2");
    piece(a.cir(), "r2*i");
    if (out.empty()) out = "0";
    return "(" + out + ")";
}

inline std::string render_amp_float(const Amp& a) {
    const auto z = a.as_complex();
    std::ostringstream out;
    out.precision(12);
    if (z.imag() == 0.0)
        out << z.real();
    else
        out << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return out.str();
}

// ---------------------------------------------------------------------------
// Monomials and labstates. A monomial is a `*`-joined list of generators
// A<k> (signal creation) and D<k> (decommission) applied to the vacuum |0);
// VAC denotes the empty monomial. Sites that an operation has annihilated
// render as Z<k>; that form is display-only and not accepted back.
// ---------------------------------------------------------------------------

inline std::string render_monomial(const Configuration& c) {
    std::string out;
    auto append = [&](char g, int s) {
        if (!out.empty()) out += '*';
        out += g;
        out += std::to_string(s);
    };
    for (int s : c.signal_sites()) append('A', s);
    for (int s : c.faulty_sites()) append('D', s);
    for (int s = 1; s <= c.size(); ++s)
        if (c.at(s) == PBit::Empty) append('Z', s);
    return out.empty() ? "VAC" : out;
}

inline std::string render_labstate(const Labstate& state, bool float_amps = false) {
    if (state.is_zero()) return "(0)*VAC";
    std::string out;
    for (const auto& [c, a] : state.terms()) {
        if (!out.empty()) out += " + ";
        out += (float_amps ? render_amp_float(a) : render_amp(a)) + "*" + render_monomial(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Scenario files. Line-oriented, UTF-8, LF or CRLF, '#' comments:
//
//   esds N
//   init <term> (+ <term>)*
//   stage <name>
//     map <monomial> -> <term> (+ <term>)*
//   outcome <name> : <predicate> (, <predicate>)*
//
// term := [amp *] monomial | [amp *] VAC ; predicates are signal@k, faulty@k,
// ground@k and noothersignal.
// ---------------------------------------------------------------------------

namespace detail {

struct LineScanner {
    std::string_view text;
    std::size_t pos = 0;
    int line;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool done() {
        skip_ws();
        return pos >= text.size();
    }

    int column() const { return static_cast<int>(pos) + 1; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line, column());
    }

    bool take_if(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        if (!take_if(c)) fail("expected '" + std::string(1, c) + "' " + what);
    }

    std::string take_word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        return std::string(text.substr(start, pos - start));
    }

    int take_site_number() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected a site number");
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos++] - '0');
            if (v > 1'000'000) fail("site number out of range");
        }
        return static_cast<int>(v);
    }

    /// Rest of the line, trimmed; used for stage and outcome names.
    std::string take_rest() {
        skip_ws();
        std::size_t end = text.size();
        while (end > pos && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
        std::string out(text.substr(pos, end - pos));
        pos = end;
        return out;
    }
};

struct ParsedTerm {
    Amp amp;
    std::vector<std::pair<int, PBit>> writes; // from A/D generators
};

inline Amp scan_amp_parens(LineScanner& sc) {
    sc.expect('(', "to open an amplitude");
    const std::size_t start = sc.pos;
    int depth = 1;
    while (sc.pos < sc.text.size() && depth > 0) {
        if (sc.text[sc.pos] == '(') ++depth;
        if (sc.text[sc.pos] == ')') --depth;
        ++sc.pos;
    }
    if (depth != 0) sc.fail("unterminated amplitude");
    return parse_amp(sc.text.substr(start, sc.pos - 1 - start), sc.line,
                     static_cast<int>(start) + 1);
}

/// A `*`-joined generator list; `allow_decommission` is false on map sources,
/// which are pure creation monomials.
inline std::vector<std::pair<int, PBit>> scan_generators(LineScanner& sc, int esds,
                                                         bool allow_decommission) {
    std::vector<std::pair<int, PBit>> writes;
    std::set<int> seen;
    do {
        sc.skip_ws();
        if (sc.pos >= sc.text.size()) sc.fail("expected a generator");
        const char g = sc.text[sc.pos];
        if (g == 'V') {
            if (sc.text.substr(sc.pos, 3) != "VAC") sc.fail("expected VAC");
            sc.pos += 3;
            if (!writes.empty()) sc.fail("VAC cannot be combined with generators");
            return writes;
        }
        if (g != 'A' && g != 'D') sc.fail("expected generator A<k> or D<k>");
        if (g == 'D' && !allow_decommission)
            sc.fail("map sources are creation monomials (A<k> only)");
        ++sc.pos;
        const int site = sc.take_site_number();
        if (site < 1 || site > esds)
            sc.fail("site " + std::to_string(site) + " is not declared (esds " +
                    std::to_string(esds) + ")");
        if (!seen.insert(site).second)
            sc.fail("site " + std::to_string(site) + " repeated in monomial");
        writes.emplace_back(site, g == 'A' ? PBit::Signal : PBit::Faulty);
    } while (sc.take_if('*'));
    return writes;
}

inline ParsedTerm scan_term(LineScanner& sc, int esds) {
    ParsedTerm t{Amp(1), {}};
    sc.skip_ws();
    if (sc.pos < sc.text.size() && sc.text[sc.pos] == '(') {
        t.amp = scan_amp_parens(sc);
        sc.expect('*', "between amplitude and monomial");
    }
    t.writes = scan_generators(sc, esds, /*allow_decommission=*/true);
    return t;
}

inline std::vector<ParsedTerm> scan_term_sum(LineScanner& sc, int esds) {
    std::vector<ParsedTerm> terms;
    terms.push_back(scan_term(sc, esds));
    while (sc.take_if('+')) terms.push_back(scan_term(sc, esds));
    if (!sc.done()) sc.fail("trailing characters after term list");
    return terms;
}

} // namespace detail

/// Parses scenario text into a runnable Scenario. Reports positions on
/// failure; checks declarations but not stage isometry (run does that).
inline Scenario parse_scenario(std::string_view text) {
    Scenario sc;
    bool have_esds = false;
    bool have_init = false;
    bool have_stage = false;
    std::set<std::string> outcome_names;

    int line_no = 0;
    std::size_t cursor = 0;
    while (cursor <= text.size()) {
        std::size_t eol = text.find('\n', cursor);
        std::string_view raw = text.substr(
            cursor, eol == std::string_view::npos ? text.size() - cursor : eol - cursor);
        ++line_no;
        cursor = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

        detail::LineScanner ls{raw, 0, line_no};
        if (ls.done()) continue;
        const std::string keyword = ls.take_word();

        if (keyword == "esds") {
            if (have_esds) ls.fail("duplicate esds declaration");
            const int n = ls.take_site_number();
            if (n < 1) ls.fail("esds must declare at least one site");
            if (!ls.done()) ls.fail("trailing characters after esds");
            sc.esds = n;
            have_esds = true;
        } else if (keyword == "init") {
            if (!have_esds) ls.fail("init before esds declaration");
            if (have_init) ls.fail("duplicate init");
            for (const auto& t : detail::scan_term_sum(ls, sc.esds)) {
                Configuration c(sc.esds);
                for (const auto& [site, v] : t.writes) c.set(site, v);
                sc.initial.add_term(std::move(c), t.amp);
            }
            have_init = true;
        } else if (keyword == "stage") {
            if (!have_esds) ls.fail("stage before esds declaration");
            const std::string name = ls.take_rest();
            if (name.empty()) ls.fail("stage needs a name");
            sc.stages.emplace_back(sc.esds, name);
            have_stage = true;
        } else if (keyword == "map") {
            if (!have_stage) ls.fail("map outside of a stage");
            auto source = detail::scan_generators(ls, sc.esds, /*allow_decommission=*/false);
            if (source.empty()) ls.fail("map source cannot be VAC");
            ls.skip_ws();
            if (ls.text.substr(ls.pos, 2) != "->") ls.fail("expected '->' after map source");
            ls.pos += 2;
            StageRule rule;
            for (const auto& [site, _] : source) rule.monomial.push_back(site);
            for (const auto& t : detail::scan_term_sum(ls, sc.esds))
                rule.image.push_back(RuleTerm{t.amp, t.writes});
            try {
                sc.stages.back().add_rule(std::move(rule));
            } catch (const WiringConflict& e) {
                ls.fail(e.what());
            }
        } else if (keyword == "outcome") {
            if (!have_esds) ls.fail("outcome before esds declaration");
            std::size_t colon = raw.find(':', ls.pos);
            if (colon == std::string_view::npos) ls.fail("expected ':' after outcome name");
            detail::LineScanner name_sc{raw.substr(0, colon), ls.pos, line_no};
            const std::string name = name_sc.take_rest();
            if (name.empty()) ls.fail("outcome needs a name");
            if (!outcome_names.insert(name).second) ls.fail("duplicate outcome '" + name + "'");
            ls.pos = colon + 1;
            Projector p;
            do {
                ls.skip_ws();
                std::size_t start = ls.pos;
                while (ls.pos < raw.size() && (std::isalnum(static_cast<unsigned char>(raw[ls.pos])) ||
                                               raw[ls.pos] == '@'))
                    ++ls.pos;
                std::string pred(raw.substr(start, ls.pos - start));
                auto at = pred.find('@');
                auto site_of = [&](const std::string& s) {
                    detail::LineScanner ss{s, 0, line_no};
                    int v = ss.take_site_number();
                    if (v < 1 || v > sc.esds)
                        ls.fail("site " + std::to_string(v) + " is not declared");
                    return v;
                };
                if (pred == "noothersignal")
                    p.require_no_other_signal();
                else if (at != std::string::npos && pred.substr(0, at) == "signal")
                    p.require_signal(site_of(pred.substr(at + 1)));
                else if (at != std::string::npos && pred.substr(0, at) == "faulty")
                    p.require_faulty(site_of(pred.substr(at + 1)));
                else if (at != std::string::npos && pred.substr(0, at) == "ground")
                    p.require_ground(site_of(pred.substr(at + 1)));
                else
                    ls.fail("unknown predicate '" + pred + "'");
            } while (ls.take_if(','));
            if (!ls.done()) ls.fail("trailing characters after predicates");
            sc.outcomes.push_back({name, std::move(p)});
        } else {
            ls.pos = 0;
            ls.fail("unknown keyword '" + keyword + "'");
        }
    }

    if (!have_esds) throw ParseError("missing esds declaration", line_no, 1);
    if (!have_init) throw ParseError("missing init", line_no, 1);
    return sc;
}

/// Canonical text for a scenario; parse_scenario(render_scenario(s)) == s.
inline std::string render_scenario(const Scenario& sc) {
    std::ostringstream out;
    out << "esds " << sc.esds << "\n\n";

    auto term_text = [](const Amp& a, const std::vector<std::pair<int, PBit>>& writes) {
        std::string mono;
        for (const auto& [site, v] : writes)
            if (v == PBit::Signal) mono += (mono.empty() ? "A" : "*A") + std::to_string(site);
        for (const auto& [site, v] : writes)
            if (v == PBit::Faulty) mono += (mono.empty() ? "D" : "*D") + std::to_string(site);
        if (mono.empty()) mono = "VAC";
        return render_amp(a) + "*" + mono;
    };

    out << "init";
    bool first = true;
    for (const auto& [c, a] : sc.initial.terms()) {
        std::vector<std::pair<int, PBit>> writes;
        for (int s : c.signal_sites()) writes.emplace_back(s, PBit::Signal);
        for (int s : c.faulty_sites()) writes.emplace_back(s, PBit::Faulty);
        out << (first ? " " : " + ") << term_text(a, writes);
        first = false;
    }
    out << "\n";

    for (const StageMap& st : sc.stages) {
        out << "\nstage " << st.name() << "\n";
        for (const auto& [mono, image] : st.rules()) {
            out << "  map ";
            for (std::size_t i = 0; i < mono.size(); ++i)
                out << (i ? "*A" : "A") << mono[i];
            out << " -> ";
            for (std::size_t i = 0; i < image.size(); ++i)
                out << (i ? " + " : "") << term_text(image[i].amp, image[i].writes);
            out << "\n";
        }
    }

    if (!sc.outcomes.empty()) out << "\n";
    for (const auto& o : sc.outcomes) {
        out << "outcome " << o.name << " :";
        bool first_pred = true;
        auto sep = [&]() -> std::ostream& {
            out << (first_pred ? " " : ", ");
            first_pred = false;
            return out;
        };
        for (int s : o.projector.signal_sites()) sep() << "signal@" << s;
        for (int s : o.projector.faulty_sites()) sep() << "faulty@" << s;
        for (int s : o.projector.ground_sites()) sep() << "ground@" << s;
        if (o.projector.no_other_signal()) sep() << "noothersignal";
        out << "\n";
    }
    return out.str();
}

} // namespace pset
