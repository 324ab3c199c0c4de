// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance            all criteria
//   acceptance --only k   criterion k

#include "cli.hpp"
#include "infloop/format.hpp"
#include "infloop/gamma_paths.hpp"
#include "infloop/scans.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace infloop;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string squeeze(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

// Output lines of a CLI call, without '#' notes.
std::vector<std::string> cli_lines(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    if (cli::run(args, out, err) != 0) throw std::runtime_error("cli failed: " + err.str());
    std::vector<std::string> lines;
    std::istringstream is(out.str());
    for (std::string line; std::getline(is, line);)
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

ScanOptions options(std::uint64_t seed) { return {seed, default_threads(), {}}; }

std::string report_line(const ScanReport& r) {
    std::string s = "tested=" + std::to_string(r.tested) + " skipped=" + std::to_string(r.skipped) +
                    " violations=" + std::to_string(r.violations);
    if (r.first_violation) s += " first: " + r.first_violation->record();
    return s;
}

// Printed tables, transcribed with fractions written p/q.
Outcome criterion_1() {
    struct Case {
        std::vector<std::string> args;
        std::vector<std::string> expected;
    };
    std::vector<Case> cases = {
        {{"gamma-path", "--mod", "2", "--max-iter", "1"}, {"V_0 ={0/1,1/1}", "V_1 = {0/1,1/2,1/1}"}},
        {{"gamma-path", "--mod", "3", "--max-iter", "2"},
         {"V_0 ={0/1,1/1}", "V_1 = {0/1,1/2,1/1}", "V_2 ={0/1,1/3,1/2,2/3,1/1}"}},
        {{"gamma-path", "--mod", "5", "--max-iter", "4"},
         {"V_0 ={0/1,1/1}", "V_1 = {0/1,1/2,1/1}", "V_2 ={0/1,1/3,1/2,2/3,1/1}",
          "V_3 ={0/1,1/4,1/3,2/5,1/2,3/5,2/3,3/4,1/1}",
          "V_4 ={0/1,1/5,1/4,2/7,1/3,2/5,1/2,3/5,2/3,5/7,3/4,4/5,1/1}"}},
        {{"gamma-path", "--mod", "5", "--denoms", "--max-iter", "5"},
         {"D_0 ={1,1}", "D_1 = {1,2,1}", "D_2 ={1,3,2,3,1}", "D_3 ={1,4,3,0,2,0,3,4,1}",
          "D_4 ={1,0,4,2,3,0,2,0,3,2,4,0,1}", "D_5 ={1,0,4,1,2,0,3,0,2,0,3,0,2,1,4,0,1}"}},
    };
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& c : cases) {
        auto got = cli_lines(c.args);
        if (got.size() != c.expected.size()) return {false, c.args[2] + ": " + std::to_string(got.size()) + " lines"};
        for (std::size_t i = 0; i < got.size(); ++i)
            if (squeeze(got[i]) != squeeze(c.expected[i])) return {false, "mismatch: " + got[i]};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {s < 1.0, "4 tables exact, " + std::to_string(s) + " s"};
}

Outcome criterion_2() {
    for (std::uint64_t n : {2, 3}) {
        auto r = v_algorithm(n, 50);
        if (!r.terminated) return {false, "n=" + std::to_string(n) + " did not terminate"};
    }
    for (std::uint64_t n = 4; n <= 30; ++n) {
        auto r = v_algorithm(n, 50);
        if (r.terminated || r.iterations != 50) return {false, "n=" + std::to_string(n) + " terminated"};
    }
    for (std::uint64_t n = 2; n <= 100; ++n) {
        bool ex = loop_exists(n);
        if (nonterminating(n) != ex) return {false, "criteria disagree at n=" + std::to_string(n)};
        if (ex != (n > 3)) return {false, "loop_exists wrong at n=" + std::to_string(n)};
    }
    return {true, "V terminates for 2,3; exceeds 50 for 4..30; criteria agree on 2..100"};
}

Outcome criterion_3() {
    auto r = scan_defs_equivalence(150, 2, 12, default_threads());
    return {r.ok() && r.tested > 0, report_line(r)};
}

Outcome criterion_4() {
    ScanReport all{"noloop", "n=4..25"};
    for (std::uint64_t n = 4; n <= 25; ++n) all.merge(scan_noloop(n, 1000, options(4)));
    return {all.ok() && all.skipped == 0 && all.tested == 22000, report_line(all)};
}

Outcome criterion_5() {
    ScanReport all{"infl", "p^m<=32"};
    for (std::uint64_t p : {2, 3, 5})
        for (std::uint64_t m = 1; ipow(p, m) <= 32; ++m) all.merge(scan_infl(p, m, 1000, options(5)));
    return {all.ok() && all.tested > 0, report_line(all)};
}

Outcome criterion_6() {
    ScanReport all{"pro2", "n=2..7"};
    for (std::uint64_t n = 2; n <= 7; ++n) all.merge(scan_pro2(n, 500, options(6)));
    return {all.ok() && all.skipped == 0 && all.tested == 3000, report_line(all)};
}

Outcome criterion_7() {
    auto tr = crossed_edges(parse_cf("[0; (1)]"), 12);
    auto fs = fans(tr);
    std::vector<std::string> want = {"1/0", "0/1", "1/1", "1/2", "2/3", "3/5", "5/8"};
    for (std::size_t i = 0; i < want.size(); ++i)
        if (i >= fs.size() || fs[i].pivot.str() != want[i]) return {false, "golden fan pivot " + std::to_string(i)};
    auto r = scan_thma(500, 100, options(7));
    return {r.ok() && r.tested == 600, "golden chain ok; " + report_line(r)};
}

Outcome criterion_8() {
    std::size_t checked = 0;
    for (std::uint64_t n = 4; n <= 100; ++n) {
        if (!loop_exists(n)) continue;
        if (!is_infinite_loop(loop_example(n), n).is_loop()) return {false, "example fails at n=" + std::to_string(n)};
        ++checked;
    }
    auto half = parse_expansion("1/2");
    auto v4 = is_infinite_loop(half, 4), v5 = is_infinite_loop(half, 5);
    bool named = v4.is_loop() && v5.not_loop() && v5.witness->value.den() == 5;
    return {checked == 97 && named, std::to_string(checked) + " examples; 1/2: mod 4 " + v4.record() + ", mod 5 " +
                                        v5.record()};
}

Outcome criterion_9() {
    auto t0 = std::chrono::steady_clock::now();
    auto r = scan_uplow(10000, options(9));
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {r.ok() && s < 30.0, report_line(r) + ", " + std::to_string(s) + " s"};
}

// The population is drawn by seeded search; it passes only with 200
// qualifying expansions, every one explained.
Outcome criterion_10() {
    std::size_t qualifying = 0, unresolved = 0, candidates = 0, violations = 0;
    std::string hist;
    const std::size_t want = 200, budget = 200000;
    for (auto [p, m] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}}) {
        if (qualifying >= want) break;
        auto ch = scan_count_height(p, m, want - qualifying, budget, 20, 60, options(10));
        qualifying += ch.qualifying;
        unresolved += ch.unresolved;
        candidates += ch.candidates;
        violations += ch.report.violations;
        std::uint64_t deepest = 0;
        for (const auto& [d, c] : ch.break_depth) deepest = std::max(deepest, d);
        hist += " p^m=" + std::to_string(ipow(p, m)) + ":loops=" + std::to_string(ch.loops_at_zero) +
                ",deepest_break=" + (ch.loops_at_zero ? std::to_string(deepest) : std::string("-"));
    }
    bool complete = unresolved == 0 && violations == 0;
    std::string detail = "qualifying=" + std::to_string(qualifying) + "/" + std::to_string(want) +
                         " candidates=" + std::to_string(candidates) + " unresolved=" + std::to_string(unresolved) +
                         hist;
    return {complete && qualifying >= want, detail};
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::function<Outcome()>> criteria = {criterion_1, criterion_2, criterion_3, criterion_4,
                                                      criterion_5, criterion_6, criterion_7, criterion_8,
                                                      criterion_9, criterion_10};
    std::size_t lo = 1, hi = criteria.size();
    if (argc == 3 && std::string(argv[1]) == "--only") lo = hi = std::stoul(argv[2]);
    else if (argc != 1) {
        std::cerr << "usage: acceptance [--only k]\n";
        return 2;
    }
    if (lo < 1 || hi > criteria.size()) {
        std::cerr << "no criterion " << lo << "\n";
        return 2;
    }
    bool all = true;
    for (std::size_t k = lo; k <= hi; ++k) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %zu: %s  %s  [%.2f s]\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str(), s);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
