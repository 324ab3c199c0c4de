#pragma once

/**
 * @file scans.hpp
 * @brief Seeded random populations and batch scans over the plc_verify checks.
 *
 * Item i of a scan draws from its own generator seeded with (seed, tag, i),
 * so results do not depend on the thread count. Entries are merged in index
 * order.
 */

#include "cutting_seq.hpp"
#include "format.hpp"
#include "loops.hpp"
#include "plc_verify.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <map>
#include <random>
#include <thread>

namespace infloop {

// INFLOOP_THREADS if set, otherwise the hardware concurrency.
inline unsigned default_threads() {
    if (const char* env = std::getenv("INFLOOP_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return static_cast<unsigned>(t);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

template <class F>
auto parallel_map(std::size_t count, unsigned threads, F f) -> std::vector<decltype(f(std::size_t{}))> {
    std::vector<decltype(f(std::size_t{}))> out(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) out[i] = f(i);
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    return out;
}

inline std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(tag), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

// ---------------------------------------------------------------------------
// Generators

struct Shape {
    unsigned max_a0 = 3;
    unsigned max_body = 4;
    unsigned max_period = 4;
    unsigned max_a = 6;
    unsigned big_a = 60;  // occasional large partial quotient, 1 in 8
};

namespace detail {

inline Integer draw_quotient(std::mt19937_64& rng, const Shape& s) {
    if (s.big_a > s.max_a && rng() % 8 == 0) return std::uniform_int_distribution<unsigned>(1, s.big_a)(rng);
    return std::uniform_int_distribution<unsigned>(1, s.max_a)(rng);
}

inline std::vector<Integer> draw_quotients(std::mt19937_64& rng, const Shape& s, std::size_t len) {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(draw_quotient(rng, s));
    return out;
}

inline std::size_t draw_len(std::mt19937_64& rng, unsigned lo, unsigned hi) {
    return std::uniform_int_distribution<unsigned>(lo, std::max(lo, hi))(rng);
}

}  // namespace detail

inline CFExpansion random_periodic(std::mt19937_64& rng, const Shape& s = {}) {
    Integer a0 = std::uniform_int_distribution<unsigned>(0, s.max_a0)(rng);
    auto body = detail::draw_quotients(rng, s, detail::draw_len(rng, 0, s.max_body));
    auto period = detail::draw_quotients(rng, s, detail::draw_len(rng, 1, s.max_period));
    return CFExpansion::periodic(a0, body, period);
}

// Finite expansion with 1..max_body partial quotients after a0, not
// necessarily canonical.
inline CFExpansion random_finite(std::mt19937_64& rng, const Shape& s = {}, bool infinity_tail = false) {
    Integer a0 = std::uniform_int_distribution<unsigned>(0, s.max_a0)(rng);
    auto body = detail::draw_quotients(rng, s, detail::draw_len(rng, 1, s.max_body));
    return CFExpansion::finite(a0, body, infinity_tail);
}

inline Rational random_rational(std::mt19937_64& rng, std::uint64_t q_max) {
    for (;;) {
        std::uint64_t q = std::uniform_int_distribution<std::uint64_t>(2, q_max)(rng);
        std::uint64_t p = std::uniform_int_distribution<std::uint64_t>(1, 3 * q)(rng);
        if (std::gcd(p, q) == 1) return Rational(Integer(p), Integer(q));
    }
}

struct Planted {
    CFExpansion e;
    std::int64_t k;
};

// Finite expansion with q_k = n q', q' > 1 and k < M, built by choosing a_k
// to solve a_k q_{k-1} + q_{k-2} = 0 mod n.
inline Planted planted_pro2(std::mt19937_64& rng, std::uint64_t n, const Shape& s = {}) {
    detail::require_modulus(n);
    for (;;) {
        Integer a0 = std::uniform_int_distribution<unsigned>(0, s.max_a0)(rng);
        auto body = detail::draw_quotients(rng, s, detail::draw_len(rng, 0, s.max_body));
        auto [prev, cur] = convergent_pair(CFExpansion::finite(a0, body), static_cast<std::int64_t>(body.size()));
        std::uint64_t u = mod_u64(prev.q, n), v = mod_u64(cur.q, n);
        if (std::gcd(v, n) != 1) continue;
        std::int64_t inv = detail::inverse_mod(static_cast<std::int64_t>(v), static_cast<std::int64_t>(n));
        std::uint64_t a = ((n - u) % n) * static_cast<std::uint64_t>(inv) % n;
        if (a == 0) a = n;
        a += n * std::uniform_int_distribution<std::uint64_t>(0, 2)(rng);
        body.push_back(Integer(a));
        std::int64_t k = static_cast<std::int64_t>(body.size());
        auto q_k = convergent_pair(CFExpansion::finite(a0, body), k).second.q;
        if (q_k / n <= 1) continue;
        auto tail = detail::draw_quotients(rng, s, detail::draw_len(rng, 1, s.max_body));
        body.insert(body.end(), tail.begin(), tail.end());
        return {CFExpansion::finite(a0, body), k};
    }
}

// ---------------------------------------------------------------------------
// Reports

struct ScanReport {
    std::string check;
    std::string parameters;
    std::size_t tested = 0;
    std::size_t skipped = 0;
    std::size_t violations = 0;
    std::optional<ScanEntry> first_violation;
    std::vector<ScanEntry> entries;
    std::vector<std::string> notes;
    double seconds = 0;

    ScanReport() = default;
    ScanReport(std::string check_name, std::string params)
        : check(std::move(check_name)), parameters(std::move(params)) {}

    bool ok() const { return violations == 0; }

    void add(ScanEntry s) {
        if (!s.precondition) ++skipped;
        else {
            ++tested;
            if (!s.pass) {
                ++violations;
                if (!first_violation) first_violation = s;
            }
        }
        entries.push_back(std::move(s));
    }

    void merge(const ScanReport& other) {
        for (const auto& s : other.entries) add(s);
        notes.insert(notes.end(), other.notes.begin(), other.notes.end());
        seconds += other.seconds;
    }

    std::string summary() const {
        std::string s = "scan=" + check + " " + parameters + " tested=" + std::to_string(tested) +
                        " skipped=" + std::to_string(skipped) + " violations=" + std::to_string(violations);
        if (first_violation) s += "\nfirst violation: " + first_violation->record();
        for (const auto& n : notes) s += "\n" + n;
        return s;
    }
};

namespace detail {

class Stopwatch {
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();

public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }
};

// Draws from random_periodic until pred holds, at most `tries` times.
template <class Pred>
std::optional<CFExpansion> draw_until(std::mt19937_64& rng, const Shape& s, std::size_t tries, Pred pred) {
    for (std::size_t t = 0; t < tries; ++t) {
        CFExpansion e = random_periodic(rng, s);
        if (pred(e)) return e;
    }
    return std::nullopt;
}

inline ScanEntry unmet(const std::string& check, const std::string& n, const std::string& why) {
    ScanEntry s{check, n};
    s.precondition = false;
    s.witness = why;
    return s;
}

}  // namespace detail

struct ScanOptions {
    std::uint64_t seed = 1;
    unsigned threads = 1;
    Shape shape{};
};

// Random periodic expansions that are not loops mod n, against the threshold.
inline ScanReport scan_noloop(std::uint64_t n, std::size_t count, const ScanOptions& opt) {
    detail::Stopwatch sw;
    ScanReport r{"noloop", "n=" + std::to_string(n) + " count=" + std::to_string(count)};
    auto entries = parallel_map(count, opt.threads, [&](std::size_t i) {
        auto rng = item_rng(opt.seed, n, i);
        auto e = detail::draw_until(rng, opt.shape, 1000, [n](const CFExpansion& x) {
            return is_infinite_loop(x, n).not_loop();
        });
        if (!e) return detail::unmet("noloop", std::to_string(n), "no NotLoop draw");
        return check_noloop_bound(*e, n);
    });
    for (auto& s : entries) r.add(std::move(s));
    r.seconds = sw.seconds();
    return r;
}

inline ScanReport scan_infl(std::uint64_t p, std::uint64_t m, std::size_t count, const ScanOptions& opt) {
    detail::Stopwatch sw;
    std::uint64_t pm = ipow(p, m);
    ScanReport r{"infl", "p=" + std::to_string(p) + " m=" + std::to_string(m) + " count=" + std::to_string(count)};
    auto entries = parallel_map(count, opt.threads, [&](std::size_t i) {
        auto rng = item_rng(opt.seed, pm, i);
        auto e = detail::draw_until(rng, opt.shape, 1000, [pm](const CFExpansion& x) {
            return is_infinite_loop(x, pm).not_loop();
        });
        if (!e) return detail::unmet("infl", std::to_string(pm), "no NotLoop draw");
        return check_infl(*e, p, m);
    });
    for (auto& s : entries) r.add(std::move(s));
    r.seconds = sw.seconds();
    return r;
}

inline ScanReport scan_pro2(std::uint64_t n, std::size_t count, const ScanOptions& opt) {
    detail::Stopwatch sw;
    ScanReport r{"pro2", "n=" + std::to_string(n) + " count=" + std::to_string(count)};
    auto entries = parallel_map(count, opt.threads, [&](std::size_t i) {
        auto rng = item_rng(opt.seed, 1000 + n, i);
        auto [e, k] = planted_pro2(rng, n, opt.shape);
        return check_pro2(e, n, k);
    });
    for (auto& s : entries) r.add(std::move(s));
    r.seconds = sw.seconds();
    return r;
}

// Determinants, the two-sided convergent bound, and c_N on random finite expansions.
inline ScanReport scan_uplow(std::size_t count, const ScanOptions& opt) {
    detail::Stopwatch sw;
    ScanReport r{"uplow", "count=" + std::to_string(count)};
    Shape s = opt.shape;
    s.max_body = std::max(s.max_body, 8u);
    auto entries = parallel_map(count, opt.threads, [&](std::size_t i) {
        auto rng = item_rng(opt.seed, 2000, i);
        CFExpansion e = random_finite(rng, s);
        std::vector<ScanEntry> out{check_determinant_sandwich(e), check_sandwich_cN(e)};
        return out;
    });
    for (auto& pair : entries)
        for (auto& e : pair) r.add(std::move(e));
    r.seconds = sw.seconds();
    return r;
}

inline ScanReport scan_dual_pushforward(std::uint64_t n, std::size_t count, const ScanOptions& opt) {
    detail::Stopwatch sw;
    ScanReport r{"dual-pushforward", "n=" + std::to_string(n) + " count=" + std::to_string(count)};
    auto entries = parallel_map(count, opt.threads, [&](std::size_t i) {
        auto rng = item_rng(opt.seed, 3000 + n, i);
        return check_dual_pushforward(random_finite(rng, opt.shape), n);
    });
    for (auto& s : entries) r.add(std::move(s));
    r.seconds = sw.seconds();
    return r;
}

// Fan sizes of the crossed edges against the partial quotients.
inline ScanEntry check_fans(const CFExpansion& e, std::size_t depth) {
    ScanEntry s{"thma", "-"};
    CrossingTrace tr = crossed_edges(e, depth);
    CFExpansion got = expansion_from_trace(tr);
    bool ok;
    if (e.is_finite()) {
        // The closing L either extends the last L fan or opens a fan of size 1.
        CFExpansion c = canonical_finite(e).with_infinity_tail(true);
        ok = tr.terminal.has_value() && (got == c || got == twin(c)) && eta(tr.word(), true) == got;
    } else {
        auto want = e.prefix(got.last_index());
        ok = !tr.terminal && got.last_index() >= 1 && want == got.prefix(got.last_index());
    }
    s.pass = ok;
    s.witness = value_str(value_of(e)) + " fans=" + std::to_string(fans(tr).size());
    return s;
}

inline ScanReport scan_thma(std::size_t rationals, std::size_t periodics, const ScanOptions& opt) {
    detail::Stopwatch sw;
    ScanReport r{"thma", "rationals=" + std::to_string(rationals) + " periodic=" + std::to_string(periodics)};
    auto entries = parallel_map(rationals + periodics, opt.threads, [&](std::size_t i) {
        auto rng = item_rng(opt.seed, 4000, i);
        if (i < rationals) return check_fans(expansion_of(Value(random_rational(rng, 500))), std::size_t{1} << 20);
        return check_fans(random_periodic(rng, opt.shape), 400);
    });
    for (auto& s : entries) r.add(std::move(s));
    r.seconds = sw.seconds();
    return r;
}

// Exhaustive comparison of the two loop decisions on p/q in (0,1).
inline ScanReport scan_defs_equivalence(std::uint64_t q_max, std::uint64_t n_lo, std::uint64_t n_hi, unsigned threads) {
    detail::Stopwatch sw;
    ScanReport r{"defs-equivalence", "q_max=" + std::to_string(q_max) + " n=" + std::to_string(n_lo) + ".." +
                                         std::to_string(n_hi)};
    auto rows = parallel_map(static_cast<std::size_t>(q_max + 1), threads, [&](std::size_t q) {
        std::vector<ScanEntry> out;
        for (std::uint64_t p = 1; p < q; ++p) {
            if (std::gcd(p, static_cast<std::uint64_t>(q)) != 1) continue;
            Rational x{Integer(p), Integer(q)};
            CFExpansion e = expansion_of(Value(x));
            for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
                LoopVerdict a = is_infinite_loop(e, n);
                LoopVerdict b = loop_verdict_geometric(e, n, std::size_t{1} << 20);
                ScanEntry s{"defs-equivalence", std::to_string(n)};
                s.pass = a.kind == b.kind;
                s.witness = x.str() + " algebraic=" + a.record() + " geometric=" + b.record();
                out.push_back(std::move(s));
            }
        }
        return out;
    });
    for (auto& row : rows)
        for (auto& s : row) r.add(std::move(s));
    r.seconds = sw.seconds();
    return r;
}

struct CountHeightScan {
    ScanReport report;
    std::size_t candidates = 0;
    std::size_t loops_at_zero = 0;
    std::map<std::uint64_t, std::size_t> break_depth;  // first l <= L with NotLoop, over loops at l = 0
    std::size_t qualifying = 0;
    std::size_t unresolved = 0;
};

// Random periodic expansions kept when p^l x is a loop mod p^m for all
// l <= L; each kept one is checked with the extended search up to cap. The
// search stops after `budget` candidates or `want` kept ones.
inline CountHeightScan scan_count_height(std::uint64_t p, std::uint64_t m, std::size_t want, std::size_t budget,
                                         std::uint64_t L, std::uint64_t cap, const ScanOptions& opt) {
    detail::Stopwatch sw;
    std::uint64_t pm = ipow(p, m);
    CountHeightScan out;
    out.report = {"count-height", "p^m=" + std::to_string(pm) + " L=" + std::to_string(L) + " cap=" +
                                      std::to_string(cap) + " budget=" + std::to_string(budget)};
    Shape s = opt.shape;
    s.big_a = 0;
    s.max_a = std::min<unsigned>(s.max_a, static_cast<unsigned>(pm));

    struct Probe {
        bool loop0 = false;
        std::uint64_t depth = 0;  // first failing l, or L + 1
        CFExpansion e;
    };
    const std::size_t chunk = 4096;
    for (std::size_t base = 0; base < budget && out.qualifying < want; base += chunk) {
        std::size_t len = std::min(chunk, budget - base);
        auto probes = parallel_map(len, opt.threads, [&](std::size_t j) {
            auto rng = item_rng(opt.seed, 5000 + pm, base + j);
            Probe pr;
            pr.e = random_periodic(rng, s);
            CFExpansion cur = pr.e;
            for (; pr.depth <= L; ++pr.depth) {
                if (!is_infinite_loop(cur, pm).is_loop()) break;
                pr.loop0 = true;
                if (pr.depth < L) cur = multiply_cf(cur, p);
            }
            return pr;
        });
        for (auto& pr : probes) {
            ++out.candidates;
            if (!pr.loop0) continue;
            ++out.loops_at_zero;
            if (pr.depth <= L) {
                ++out.break_depth[pr.depth];
                continue;
            }
            if (out.qualifying >= want) continue;
            ++out.qualifying;
            ScanEntry entry = check_count_height(pr.e, p, m, L, cap);
            if (entry.witness.find("unresolved") != std::string::npos) ++out.unresolved;
            entry.witness = to_string(pr.e) + " " + entry.witness;
            out.report.add(std::move(entry));
        }
    }
    std::string hist = "break depths:";
    for (const auto& [d, c] : out.break_depth) hist += " l=" + std::to_string(d) + ":" + std::to_string(c);
    out.report.notes.push_back("candidates=" + std::to_string(out.candidates) + " loops_at_l0=" +
                               std::to_string(out.loops_at_zero) + " qualifying=" + std::to_string(out.qualifying) +
                               " unresolved=" + std::to_string(out.unresolved));
    out.report.notes.push_back(hist);
    out.report.seconds = sw.seconds();
    return out;
}

}  // namespace infloop
