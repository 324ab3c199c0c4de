#include "cli.hpp"

#include "infloop/format.hpp"
#include "infloop/gamma_paths.hpp"
#include "infloop/scans.hpp"

#include <CLI11.hpp>

#include <functional>
#include <map>
#include <ostream>

namespace infloop::cli {

namespace {

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            std::uint64_t v = std::stoull(text);
            return {v, v};
        }
        std::uint64_t a = std::stoull(text.substr(0, dots)), b = std::stoull(text.substr(dots + 2));
        if (a > b) throw std::invalid_argument("empty range");
        return {a, b};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("bad range '" + text + "', expected a..b");
    }
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? sep : "") + items[i];
    return s;
}

std::string moves_str(const std::vector<Move>& w) {
    std::string s;
    for (Move m : w) s += static_cast<char>(m);
    return s.empty() ? "-" : s;
}

std::string signed_str(const Integer& x) { return (x >= 0 ? "+" : "") + x.str(); }

struct Options {
    bool record = false;
    unsigned threads = default_threads();

    std::string value;
    std::string second;
    std::optional<std::uint64_t> mod;
    std::optional<std::uint64_t> depth;
    std::optional<std::int64_t> k;
    std::optional<std::uint64_t> m;
    std::optional<std::uint64_t> times;
    std::optional<std::int64_t> shift;
    std::optional<std::uint64_t> conv;
    std::optional<std::uint64_t> word_depth;
    std::optional<std::uint64_t> scale;
    std::optional<std::uint64_t> walk;
    std::optional<std::uint64_t> p;
    std::optional<std::uint64_t> L;
    std::optional<std::string> eta_word;
    std::optional<std::string> range;
    std::optional<std::string> crosses;
    std::uint64_t max_iter = 50;
    std::uint64_t show = 12;
    std::uint64_t m_max = 5;
    bool height = false;
    bool geometric = false;
    bool denoms = false;
    bool cycle = false;

    std::string check;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> count;
    std::optional<std::uint64_t> q_max;
    std::optional<std::uint64_t> budget;
    std::optional<std::uint64_t> cap;
    std::uint64_t rationals = 500;
    std::uint64_t periodics = 100;
};

using Handler = std::function<int(const Options&, std::ostream&)>;

// ---------------------------------------------------------------------------

int cmd_cf(const Options& o, std::ostream& out) {
    CFExpansion e = parse_expansion(o.value);
    if (o.times) e = multiply_cf(e, *o.times);
    if (o.shift) e = shift_cf(e, *o.shift);
    std::string v = value_str(value_of(e));
    bool zero = e.is_finite() && e.a0() == 0 && e.body().empty();
    if (e.is_finite() && !zero) {
        CFExpansion c = canonical_finite(e);
        CFExpansion t = twin(c);
        if (o.record) out << "value=" << v << " cf=" << to_string(c) << " twin=" << to_string(t) << "\n";
        else out << to_string(c) << "\n" << to_string(t) << "\n";
    } else {
        if (o.record) out << "value=" << v << " cf=" << to_string(e) << "\n";
        else out << to_string(e) << "\n";
    }
    if (!o.record && e.is_periodic()) out << "value " << v << "\n";
    if (o.height) out << (o.record ? "B=" : "B = ") << height(e).str() << "\n";
    if (o.conv) {
        for (const auto& c : convergents(e, static_cast<std::int64_t>(*o.conv))) {
            if (c.k < 0) continue;
            if (o.record) out << "k=" << c.k << " convergent=" << cf_eval(e, c.k).str() << "\n";
            else out << "p_" << c.k << "/q_" << c.k << " = " << c.value().str() << "\n";
        }
    }
    if (o.word_depth) out << (o.record ? "word=" : "word ") << eta_inverse(e, *o.word_depth).str() << "\n";
    return 0;
}

int cmd_semiconv(const Options& o, std::ostream& out) {
    CFExpansion e = parse_expansion(o.value);
    auto row = [&](std::int64_t k, const Integer& m) {
        Rational s = semiconvergent(e, k, m);
        Convergent c = convergent_pair(e, k).second;
        Integer det = s.num() * c.q - c.p * s.den();
        if (o.record) out << "k=" << k << " m=" << m << " value=" << s.str() << " det=" << signed_str(det) << "\n";
        else out << "{" << k << "," << m << "} = " << s.str() << "  det " << signed_str(det) << "\n";
    };
    if (o.k) {
        if (!o.m) throw std::invalid_argument("--k needs --m");
        row(*o.k, *o.m);
        int sign = semiconvergent_determinant_sign(*o.k);
        if (!o.record) out << "expected sign (-1)^k = " << (sign > 0 ? "+1" : "-1") << "\n";
        return 0;
    }
    std::int64_t K = static_cast<std::int64_t>(o.depth.value_or(6));
    if (e.is_finite()) K = std::min<std::int64_t>(K, static_cast<std::int64_t>(e.last_index()) - 1);
    for (std::int64_t k = -1; k <= K; ++k) {
        const Integer& a = e.partial_quotient(static_cast<std::size_t>(k + 1));
        for (Integer m = 1; m <= a; ++m) row(k, m);
    }
    return 0;
}

int cmd_loopcheck(const Options& o, std::ostream& out) {
    CFExpansion e = parse_expansion(o.value);
    std::uint64_t n = *o.mod;
    LoopVerdict v = o.geometric ? loop_verdict_geometric(e, n, o.depth.value_or(std::size_t{1} << 20))
                                : is_infinite_loop(e, n, o.depth);
    out << v.record() << "\n";
    if (!o.record && v.witness)
        out << "semi-convergent {" << v.witness->k << "," << v.witness->m << "} = " << v.witness->value.str() << "\n";
    if (!o.record && v.edge) out << "edge " << v.edge->str() << "\n";
    if (o.scale) {
        bool kept = loop_scaling_check(e, n, *o.scale);
        out << (o.record ? "scaled_loop=" : "loop mod " + std::to_string(*o.scale * n) + ": ") << (kept ? "1" : "0")
            << "\n";
    }
    return 0;
}

int cmd_loop_exists(const Options& o, std::ostream& out) {
    auto [a, b] = parse_range(o.range.value_or("2..30"));
    if (!o.record) out << "n  exists  nonterminating\n";
    for (std::uint64_t n = std::max<std::uint64_t>(a, 2); n <= b; ++n) {
        bool ex = loop_exists(n), nt = nonterminating(n);
        if (o.record) out << "n=" << n << " exists=" << ex << " nonterminating=" << nt << "\n";
        else out << n << "  " << (ex ? "yes" : "no") << "  " << (nt ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_loop_example(const Options& o, std::ostream& out) {
    std::uint64_t n = *o.mod;
    CFExpansion e = loop_example(n);
    LoopVerdict v = is_infinite_loop(e, n);
    if (o.record) out << "n=" << n << " example=" << to_string(e) << " verdict=" << v.record() << "\n";
    else out << to_string(e) << "\n" << "value " << value_str(value_of(e)) << "\n" << v.record() << "\n";
    if (o.cycle) {
        auto cw = detail::find_cycle(ModGraph(n));
        out << "prefix=" << moves_str(cw->prefix) << " cycle=" << moves_str(cw->cycle) << "\n";
    }
    if (o.walk) {
        for (const auto& s : sb_walk(e, n, *o.walk))
            out << static_cast<char>(s.move) << " " << s.residue << (s.tail ? " tail" : "") << "\n";
    }
    return 0;
}

template <class Run, class Render>
void print_gamma(const Options& o, std::ostream& out, std::uint64_t n, const Run& run, Render render) {
    std::size_t shown = std::min<std::size_t>(run.steps.size(), o.show + 1);
    for (std::size_t i = 0; i < shown; ++i) out << render(i, run.steps[i]) << "\n";
    std::uint64_t depth = resolution_depth(n, ModGraph::start());
    std::string d = depth == never ? "never" : std::to_string(depth);
    if (o.record) {
        out << "n=" << n << " terminated=" << run.terminated << " iterations=" << run.iterations
            << " resolution_depth=" << d << " truncated=" << run.truncated << "\n";
        return;
    }
    if (!run.terminated) out << "# not terminated within " << run.iterations << " iterations (resolves: " << d << ")\n";
    if (run.truncated) out << "# snapshots stop at " << run.steps.size() - 1 << ": more than " << snapshot_limit
                           << " entries\n";
    if (shown < run.steps.size()) out << "# " << run.steps.size() - shown << " more snapshots not shown (--show)\n";
}

int cmd_gamma_path(const Options& o, std::ostream& out) {
    std::uint64_t n = *o.mod;
    if (o.denoms) print_gamma(o, out, n, d_algorithm(n, o.max_iter), render_denominators);
    else print_gamma(o, out, n, v_algorithm(n, o.max_iter), render_vertices);
    return 0;
}

int cmd_cutseq(const Options& o, std::ostream& out) {
    std::string sep = o.record ? "=" : ": ";
    if (o.eta_word) {
        CFExpansion e = eta(CuttingWord::parse(*o.eta_word));
        out << "expansion" << sep << to_string(e) << "\n";
        return 0;
    }
    if (o.value.empty()) throw std::invalid_argument("need a value or --eta");
    CFExpansion e = parse_expansion(o.value);
    std::size_t depth = o.depth.value_or(64);
    CrossingTrace tr = o.scale ? crossed_edges_scaled(e, *o.scale, depth) : crossed_edges(e, depth);
    std::vector<std::string> edges, pivots;
    for (const auto& ed : tr.edges) edges.push_back(ed.str());
    for (const auto& f : fans(tr)) pivots.push_back(f.pivot.str() + "^" + std::to_string(f.size));
    out << "word" << sep << tr.word().str() << "\n";
    out << "edges" << sep << join(edges, ", ") << "\n";
    out << "fans" << sep << join(pivots, " ") << "\n";
    out << "terminal" << sep << (tr.terminal ? tr.terminal->str() : "none") << "\n";
    out << "expansion" << sep << to_string(expansion_from_trace(tr)) << "\n";
    if (o.mod) out << "verdict" << sep << loop_verdict_geometric(e, *o.mod, depth).record() << "\n";
    return 0;
}

int cmd_farey(const Options& o, std::ostream& out) {
    Rational a = std::get<Rational>(parse_value(o.value));
    Rational b = std::get<Rational>(parse_value(o.second));
    std::string sep = o.record ? "=" : ": ";
    bool nb = is_farey_neighbor(a, b);
    out << "neighbours" << sep << nb << "\n";
    out << "mediant" << sep << farey_mediant(a, b).str() << "\n";
    if (nb) {
        out << "difference" << sep << farey_difference(a, b).str() << "\n";
        out << "base_translate" << sep << is_base_translate(FareyEdge(a, b)) << "\n";
    }
    if (o.mod) {
        out << "gamma0" << sep << is_gamma0_neighbor(a, b, *o.mod) << "\n";
        out << "dual" << sep << is_dual_neighbor(a, b, *o.mod) << "\n";
    }
    if (o.crosses) out << "crossed" << sep << crosses_edge(parse_value(*o.crosses), FareyEdge(a, b)) << "\n";
    return 0;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
    CFExpansion e = parse_expansion(o.value);
    for (const auto& [l, h] : height_spectrum(e, *o.p, *o.L).entries) out << "l=" << l << " B=" << h.str() << "\n";
    return 0;
}

int cmd_mp_bound(const Options& o, std::ostream& out) {
    CFExpansion e = parse_expansion(o.value);
    MpBound b = mp_upper_bound(e, *o.p, *o.L);
    Rational lo = mp_partial_lower(e, *o.p, *o.L);
    if (o.record) {
        out << "upper=" << b.value.str() << " argmin=" << b.argmin << " rational=" << b.rational_input
            << " partial_min_not_a_bound=" << lo.str() << "\n";
    } else if (b.rational_input) {
        out << "upper bound: 0 (rational input)\n";
    } else {
        out << "upper bound: " << b.value.str() << " (l = " << b.argmin << ")\n";
        out << "min of 1/(B+2) over l <= " << *o.L << ": " << lo.str() << " (not a bound)\n";
    }
    return 0;
}

int cmd_persistence(const Options& o, std::ostream& out) {
    CFExpansion e = parse_expansion(o.value);
    for (const auto& [m, l] : persistence_scan(e, *o.p, o.m_max, *o.L))
        out << "m=" << m << " l=" << (l ? std::to_string(*l) : "none") << "\n";
    return 0;
}

// ---------------------------------------------------------------------------

int report(const Options& o, std::ostream& out, const ScanReport& r, bool asserted = true) {
    if (o.record)
        for (const auto& s : r.entries) out << s.record() << "\n";
    out << r.summary() << "\n";
    return asserted && !r.ok() ? 1 : 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    ScanOptions so{o.seed, o.threads, {}};
    const std::string& c = o.check;
    ScanReport all{c, "seed=" + std::to_string(o.seed)};
    auto each_n = [&](const std::string& def, auto scan) {
        auto [a, b] = parse_range(o.range.value_or(def));
        for (std::uint64_t n = a; n <= b; ++n) all.merge(scan(n));
    };
    if (c == "noloop") {
        each_n("4..25", [&](std::uint64_t n) { return scan_noloop(n, o.count.value_or(1000), so); });
    } else if (c == "pro2") {
        each_n("2..7", [&](std::uint64_t n) { return scan_pro2(n, o.count.value_or(500), so); });
    } else if (c == "dual-pushforward") {
        each_n("2..12", [&](std::uint64_t n) { return scan_dual_pushforward(n, o.count.value_or(200), so); });
    } else if (c == "infl" || c == "count-height") {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> pms;
        if (o.p) {
            auto [a, b] = o.m ? std::pair{*o.m, *o.m} : std::pair<std::uint64_t, std::uint64_t>{1, 5};
            for (std::uint64_t m = a; m <= b; ++m) pms.push_back({*o.p, m});
        } else if (c == "infl") {
            for (std::uint64_t p : {2, 3, 5})
                for (std::uint64_t m = 1; ipow(p, m) <= 32; ++m) pms.push_back({p, m});
        } else {
            pms = {{2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}};
        }
        for (auto [p, m] : pms) {
            if (c == "infl") {
                all.merge(scan_infl(p, m, o.count.value_or(1000), so));
                continue;
            }
            auto ch = scan_count_height(p, m, o.count.value_or(200), o.budget.value_or(20000), o.L.value_or(20),
                                        o.cap.value_or(60), so);
            all.merge(ch.report);
            all.notes.push_back("p^m=" + std::to_string(ipow(p, m)) + " want=" + std::to_string(o.count.value_or(200)));
        }
        // count-height is exploratory: unresolved cases are reported, not asserted.
        return report(o, out, all, c == "infl");
    } else if (c == "defs-equivalence") {
        auto [a, b] = parse_range(o.range.value_or("2..12"));
        all.merge(scan_defs_equivalence(o.q_max.value_or(150), a, b, o.threads));
    } else if (c == "thma") {
        all.merge(scan_thma(o.rationals, o.periodics, so));
    } else if (c == "uplow") {
        all.merge(scan_uplow(o.count.value_or(10000), so));
    } else {
        throw std::invalid_argument("unknown check '" + c + "'");
    }
    return report(o, out, all);
}

// ---------------------------------------------------------------------------

struct Command {
    CommandInfo info;
    Handler handler;
    std::function<void(CLI::App&, Options&)> options;
};

const std::vector<Command>& commands() {
    static const std::vector<Command> table = {
        {{"cf", "continued fraction expansions of a value",
          {"parse_expansion", "to_string", "cf_from_rational", "twin", "cf_of_surd", "surd_of_periodic", "multiply_cf",
           "shift_cf", "height", "convergents", "cf_eval", "eta_inverse"}},
         cmd_cf,
         [](CLI::App& s, Options& o) {
             s.add_option("value", o.value, "p/q, (P+sqrt(D))/Q, sqrt(D) or [a0; a1, ...]")->required();
             s.add_option("--times", o.times, "multiply by n first")->check(CLI::PositiveNumber);
             s.add_option("--shift", o.shift, "add an integer first");
             s.add_flag("--height", o.height, "print the height B");
             s.add_option("--convergents", o.conv, "list convergents up to index K");
             s.add_option("--word", o.word_depth, "L/R word of a_0..a_K");
         }},
        {{"semiconv", "semi-convergents", {"semiconvergent", "semiconvergent_determinant_sign", "convergents"}},
         cmd_semiconv,
         [](CLI::App& s, Options& o) {
             s.add_option("value", o.value)->required();
             s.add_option("--k", o.k, "index k >= -1");
             s.add_option("--m", o.m, "multiplier m");
             s.add_option("--depth", o.depth, "list k up to this index");
         }},
        {{"loopcheck", "is the value an infinite loop mod n",
          {"is_infinite_loop", "loop_verdict_geometric", "loop_scaling_check"}},
         cmd_loopcheck,
         [](CLI::App& s, Options& o) {
             s.add_option("value", o.value)->required();
             s.add_option("--mod", o.mod, "modulus n >= 2")->required();
             s.add_option("--depth", o.depth, "partial quotients to examine for streams");
             s.add_flag("--geometric", o.geometric, "decide through crossed edges instead");
             s.add_option("--scale", o.scale, "also test the loop mod k n");
         }},
        {{"loop-exists", "existence of infinite loops mod n", {"loop_exists", "nonterminating"}},
         cmd_loop_exists,
         [](CLI::App& s, Options& o) { s.add_option("--n-range", o.range, "a..b (default 2..30)"); }},
        {{"loop-example", "a validated infinite loop mod n", {"loop_example", "is_infinite_loop", "sb_walk"}},
         cmd_loop_example,
         [](CLI::App& s, Options& o) {
             s.add_option("--mod", o.mod)->required();
             s.add_flag("--cycle", o.cycle, "print the move word of the graph cycle");
             s.add_option("--walk", o.walk, "print this many Stern-Brocot steps with residues");
         }},
        {{"gamma-path", "iterated mediant insertion between 0/1 and 1/1",
          {"v_algorithm", "d_algorithm", "resolution_depth"}},
         cmd_gamma_path,
         [](CLI::App& s, Options& o) {
             s.add_option("--mod", o.mod)->required();
             s.add_option("--max-iter", o.max_iter, "iteration limit")->capture_default_str();
             s.add_flag("--denoms", o.denoms, "denominator residues instead of vertices");
             s.add_option("--show", o.show, "print at most this many iterations")->capture_default_str();
         }},
        {{"cutseq", "cutting sequence of the ray from I",
          {"crossed_edges", "crossed_edges_scaled", "fans", "expansion_from_trace", "eta", "loop_verdict_geometric",
           "crosses_edge"}},
         cmd_cutseq,
         [](CLI::App& s, Options& o) {
             s.add_option("value", o.value);
             s.add_option("--depth", o.depth, "triangles to follow (default 64)");
             s.add_option("--scale", o.scale, "trace against (1/n)F");
             s.add_option("--mod", o.mod, "also print the geometric loop verdict");
             s.add_option("--eta", o.eta_word, "expansion of a word such as 'R^2 L^3'");
         }},
        {{"farey", "Farey, Gamma_0(n) and dual relations of two rationals",
          {"is_farey_neighbor", "farey_mediant", "farey_difference", "is_base_translate", "is_gamma0_neighbor",
           "is_dual_neighbor", "crosses_edge"}},
         cmd_farey,
         [](CLI::App& s, Options& o) {
             s.add_option("a", o.value)->required();
             s.add_option("b", o.second)->required();
             s.add_option("--mod", o.mod);
             s.add_option("--crosses", o.crosses, "does the ray to this value cross the edge");
         }},
        {{"spectrum", "heights B(p^l x) for l <= L", {"height_spectrum"}},
         cmd_spectrum,
         [](CLI::App& s, Options& o) {
             s.add_option("value", o.value)->required();
             s.add_option("-p", o.p, "prime")->required();
             s.add_option("-L", o.L)->required();
         }},
        {{"mp-bound", "upper bound for m_p from the height spectrum", {"mp_upper_bound"}},
         cmd_mp_bound,
         [](CLI::App& s, Options& o) {
             s.add_option("value", o.value)->required();
             s.add_option("-p", o.p, "prime")->required();
             s.add_option("-L", o.L)->required();
         }},
        {{"persistence", "least l with p^l x not a loop mod p^m", {"persistence_scan"}},
         cmd_persistence,
         [](CLI::App& s, Options& o) {
             s.add_option("value", o.value)->required();
             s.add_option("-p", o.p, "prime")->required();
             s.add_option("-L", o.L)->required();
             s.add_option("--m-max", o.m_max)->capture_default_str();
         }},
        {{"verify", "batch checks: noloop infl pro2 count-height defs-equivalence thma dual-pushforward uplow",
          {"scan_noloop", "scan_infl", "scan_pro2", "scan_count_height", "scan_defs_equivalence", "scan_thma",
           "scan_dual_pushforward", "scan_uplow", "check_noloop_bound", "check_infl", "check_pro2",
           "check_count_height", "check_dual_pushforward", "check_determinant_sandwich", "check_sandwich_cN"}},
         cmd_verify,
         [](CLI::App& s, Options& o) {
             s.add_option("check", o.check)
                 ->required()
                 ->check(CLI::IsMember({"noloop", "infl", "pro2", "count-height", "defs-equivalence", "thma",
                                        "dual-pushforward", "uplow"}));
             s.add_option("--seed", o.seed)->capture_default_str();
             s.add_option("--n-range", o.range, "a..b");
             s.add_option("--count", o.count, "items per modulus");
             s.add_option("-p", o.p, "prime (infl, count-height)");
             s.add_option("-m", o.m, "exponent (infl, count-height)");
             s.add_option("--q-max", o.q_max, "largest denominator (defs-equivalence)");
             s.add_option("--budget", o.budget, "candidates drawn (count-height)");
             s.add_option("-L", o.L, "loop depth (count-height)");
             s.add_option("--cap", o.cap, "extended search depth (count-height)");
             s.add_option("--rationals", o.rationals)->capture_default_str();
             s.add_option("--periodics", o.periodics)->capture_default_str();
         }},
    };
    return table;
}

}  // namespace

const std::vector<CommandInfo>& command_table() {
    static const std::vector<CommandInfo> infos = [] {
        std::vector<CommandInfo> v;
        for (const auto& c : commands()) v.push_back(c.info);
        return v;
    }();
    return infos;
}

const std::vector<std::string>& library_operations() {
    static const std::vector<std::string> ops = {
        // farey
        "is_farey_neighbor", "is_gamma0_neighbor", "is_dual_neighbor", "farey_mediant", "farey_difference",
        "is_base_translate",
        // contfrac
        "parse_expansion", "to_string", "convergents", "cf_eval", "semiconvergent", "semiconvergent_determinant_sign",
        "height", "cf_from_rational", "twin", "cf_of_surd", "surd_of_periodic", "multiply_cf", "shift_cf",
        // loops
        "is_infinite_loop", "loop_scaling_check", "loop_exists", "loop_example", "sb_walk",
        // gamma_paths
        "v_algorithm", "d_algorithm", "nonterminating", "resolution_depth",
        // cutting_seq
        "crossed_edges", "crossed_edges_scaled", "crosses_edge", "fans", "eta", "eta_inverse", "expansion_from_trace",
        "loop_verdict_geometric",
        // plc_verify
        "height_spectrum", "mp_upper_bound", "check_noloop_bound", "check_infl", "check_pro2", "check_count_height",
        "persistence_scan", "check_determinant_sandwich", "check_sandwich_cN", "check_dual_pushforward",
        "scan_noloop", "scan_infl", "scan_pro2", "scan_count_height", "scan_defs_equivalence", "scan_thma",
        "scan_dual_pushforward", "scan_uplow"};
    return ops;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Infinite loops mod n, Farey geometry and height checks", "infloop"};
    app.set_config("--config", "", "file of key = value lines");
    app.fallthrough();
    app.require_subcommand(1);
    Options o;
    app.add_flag("--record", o.record, "line records instead of human output");
    app.add_option("--threads", o.threads, "worker threads (default: INFLOOP_THREADS or all cores)")
        ->check(CLI::PositiveNumber);

    std::map<std::string, std::pair<CLI::App*, Handler>> subs;
    for (const auto& c : commands()) {
        CLI::App* s = app.add_subcommand(c.info.name, c.info.summary);
        c.options(*s, o);
        subs[c.info.name] = {s, c.handler};
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    try {
        for (const auto& [name, entry] : subs)
            if (entry.first->parsed()) return entry.second(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace infloop::cli
