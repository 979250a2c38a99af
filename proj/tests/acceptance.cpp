// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "torsionlab/automata.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/group.hpp"
#include "torsionlab/impred.hpp"
#include "torsionlab/kgroup.hpp"
#include "torsionlab/machine.hpp"
#include "torsionlab/pipeline.hpp"
#include "torsionlab/subshift.hpp"

#include "oracles.hpp"
#include "random_specs.hpp"

using namespace torsionlab;

namespace {

const GroupCtx Z = GroupCtx::integers();
const GroupCtx S3 = GroupCtx::s3();

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::string failed;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        failed += failed.empty() ? what : "; " + what;
        pass = false;
    }
};

OraclePrefix random_prefix(std::mt19937_64& rng, std::size_t n, unsigned one_in) {
    std::string b(n, '0');
    for (auto& c : b)
        if (rng() % one_in == 0) c = '1';
    return OraclePrefix(b);
}

// ---------------------------------------------------------------- 1

void embedding_equivalence(Outcome& o) {
    std::uint64_t checks = 0, mismatches = 0;
    for (std::uint32_t mask = 0; mask < 32; ++mask) {
        std::set<std::uint64_t> a;
        for (std::uint64_t n = 1; n <= 5; ++n)
            if (mask >> (n - 1) & 1) a.insert(n);
        const auto prefix = OraclePrefix::from_set(a, 11);
        for (std::uint64_t n = 1; n <= 5; ++n) {
            const auto w = embed_element(Z, S3, n);
            // A lies in {1..5}, so zeros beyond bit 10 are exact
            const KContext ctx(Z, S3, prefix.padded(2 * w.size() + 1));
            const auto r = wp_K(ctx, w);
            ++checks;
            if ((r.status == WpResult::Status::Identity) != a.contains(n)) ++mismatches;
        }
    }
    o.detail << checks << " checks, " << mismatches << " mismatches";
    o.require(mismatches == 0, "mismatch");
}

// ---------------------------------------------------------------- 2

void conj_coherence(Outcome& o) {
    std::mt19937_64 rng(2);
    std::uint64_t bits = 0, disagreements = 0, non_monotone = 0;
    for (int pair = 0; pair < 20; ++pair) {
        const std::size_t len = 1 + rng() % 9;
        const auto u = random_prefix(rng, len, 3);
        std::string vb = u.bits();
        for (auto& c : vb)
            if (rng() % 3 == 0) c = '1';
        const OraclePrefix v(vb);
        const auto gu = conj_reduction(Z, S3, u);
        const auto gv = conj_reduction(Z, S3, v);
        if (!letterwise_leq(gu, gv)) ++non_monotone;
        for (const auto& [in, out] : {std::pair{u, gu}, std::pair{v, gv}}) {
            const KContext ctx(Z, S3, in);
            for (std::size_t i = 0; i < out.size(); ++i) {
                const auto r = wp_K(ctx, k_enumerate(Z, S3, i));
                ++bits;
                if (r.status == WpResult::Status::NeedsOracle ||
                    out.bit(i) != (r.status == WpResult::Status::Identity))
                    ++disagreements;
            }
        }
    }
    o.detail << "20 pairs, " << bits << " bits, " << disagreements << " disagreements, " << non_monotone
             << " non-monotone";
    o.require(disagreements == 0, "bit disagrees with wp_K");
    o.require(non_monotone == 0, "not monotone");
}

// ---------------------------------------------------------------- 3

void quotient_probe(Outcome& o) {
    std::mt19937_64 rng(3);
    const std::uint64_t count = lenlex_count_upto(4, k_alphabet_size(Z, S3));
    std::uint64_t checks = 0, failures = 0;
    for (int pair = 0; pair < 10; ++pair) {
        const auto larger = random_prefix(rng, 9, 2);
        std::string sb = larger.bits();
        for (auto& c : sb)
            if (rng() % 2 == 0) c = '0';
        const KContext small(Z, S3, OraclePrefix(sb));
        const KContext large(Z, S3, larger);
        for (std::uint64_t i = 0; i < count; ++i) {
            ++checks;
            if (!quotient_check(small, large, k_enumerate(Z, S3, i))) ++failures;
        }
    }
    o.detail << checks << " checks, " << failures << " failures";
    o.require(failures == 0, "quotient check false");
}

// ---------------------------------------------------------------- 4

void torsion_bound(Outcome& o) {
    const GroupCtx G = GroupCtx::grigorchuk();
    constexpr std::uint64_t kExponent = 6;
    constexpr std::uint64_t kBudget = 100000;
    std::mt19937_64 rng(4);
    const auto s = k_alphabet_size(G, S3);
    std::uint64_t sampled = 0, skipped = 0, patterns = 0, failures = 0, rejected_gamma = 0;
    std::uint64_t max_radius = 0;
    while (sampled + skipped < 200) {
        KWord w;
        const auto len = 1 + rng() % 3;
        for (std::uint64_t i = 0; i < len; ++i) w.letters.push_back(k_generator(G, S3, static_cast<std::uint32_t>(rng() % s)));
        const auto ord = element_order(G, evaluate(G, gamma(w)), 64);
        if (ord.infinite || ord.value > 8) {
            ++rejected_gamma;
            continue;
        }
        const std::uint64_t k = ord.value;
        const std::uint64_t radius = k * w.size();
        const auto wk = k_power(w, k);
        const auto big = k_power(w, kExponent * k);

        // only cells read by w^k influence the action; every legal pattern
        // agrees on them with one having at most two ones among them
        const auto rs = read_sites(G, wk);
        const std::size_t r = rs.positions.size();
        const std::uint64_t reduced = 1 + r + r * (r - 1) / 2;
        if (reduced > kBudget) {
            ++skipped;
            continue;
        }
        ++sampled;
        max_radius = std::max(max_radius, radius);
        auto domain = Domain::of_ball(ball(G, radius));
        Pattern p = zero_pattern(domain);
        std::vector<std::size_t> at;
        for (const auto& pos : rs.positions) at.push_back(*domain->index_of(pos));
        const KContext ctx(G, S3, OraclePrefix::zeros(2 * radius + 1));
        auto check = [&](std::initializer_list<std::size_t> ones) {
            for (auto i : ones) p.values[at[i]] = 1;
            const auto legal = pattern_legal(G, ctx.oracle, p);
            if (legal.status == Legality::Legal) {
                ++patterns;
                const auto [q, h] = act(ctx, big, p, identity(S3));
                if (q.values != p.values || q.domain->size() != p.domain->size() || !is_identity(S3, h)) ++failures;
            }
            for (auto i : ones) p.values[at[i]] = 0;
        };
        check({});
        for (std::size_t i = 0; i < r; ++i) check({i});
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j) check({i, j});
    }
    o.detail << sampled << " words, " << skipped << " skipped over budget, " << rejected_gamma
             << " resampled for gamma order > 8, " << patterns << " patterns, max radius " << max_radius << ", "
             << failures << " failures";
    o.require(failures == 0, "w^(6k) acts nontrivially");
}

// ---------------------------------------------------------------- 5

void grigorchuk_wp(Outcome& o) {
    const GroupCtx G = GroupCtx::grigorchuk();
    std::uint64_t words = 0, mismatches = 0;
    std::vector<std::uint32_t> cur;
    while (cur.size() <= 6) {
        std::string letters;
        for (auto x : cur) letters.push_back(G.generator(x)[0]);
        ++words;
        if (is_identity(G, GeneratorWord{cur}) != oracle::grig_trivial_at_depth(letters, 6)) ++mismatches;
        lenlex_next(cur, 4);
    }
    const auto ab = element_order(G, evaluate(G, parse_word(G, "ab")), 64);
    o.detail << words << " words, " << mismatches << " mismatches, ord(ab) = " << (ab.infinite ? 0 : ab.value)
             << " (expected 8)";
    o.require(mismatches == 0, "tree oracle mismatch");
    o.require(!ab.infinite && ab.value == 8, "ord(ab) != 8");
}

// ---------------------------------------------------------------- 6, 7

const std::vector<ToyProgram> kRoster{ToyProgram::halt(), ToyProgram::loop(), ToyProgram::oracle_echo()};
constexpr std::uint64_t kStepCap = 10000;

struct Harness {
    std::shared_ptr<const Skeleton> sk;
    OraclePrefix a;
    WitnessReport report;
};

Harness build_harness() {
    Harness h;
    h.sk = std::make_shared<const Skeleton>(build_skeleton(RateFunction::identity(), 3));
    h.a = approx_A(*h.sk, MachineEnumeration::roster(kRoster), kStepCap);
    h.report = check_witnesses(make_psi_handle(h.sk), h.a, kRoster, kStepCap, h.sk->length());
    return h;
}

void impredictability_harness(Outcome& o, const Harness& h) {
    const auto& halt = h.report.entries.at(0);
    const auto& loop = h.report.entries.at(1);
    o.require(halt.member_count() >= 1, "no HALT witness in A");

    std::vector<OraclePrefix> by_cap;
    for (std::uint64_t cap : {1ull, 10ull, 100ull, 10000ull})
        by_cap.push_back(approx_A(*h.sk, MachineEnumeration::roster(kRoster), cap));
    std::uint64_t stable = 0;
    for (const auto& w : loop.witnesses) {
        if (!w.assigned) continue;
        const auto pos = static_cast<std::size_t>(w.position);
        bool out = true;
        for (const auto& a : by_cap) out = out && !a.bit(pos);
        stable += out;
    }
    o.require(stable >= 1, "no assigned loop witness outside A at every cap");

    const auto again = build_skeleton(RateFunction::identity(), 3);
    const bool same = again.serialize() == h.sk->serialize() &&
                      approx_A(again, MachineEnumeration::roster(kRoster), kStepCap) == h.a;
    o.require(same, "skeleton not deterministic");

    o.detail << "length " << h.sk->length() << ", HALT members " << halt.member_count() << ", loop assigned non-members "
             << loop.assigned_nonmember_count() << " (" << stable << " stable over caps 1..10^4), echo witnesses "
             << h.report.entries.at(2).witnesses.size() << ", deterministic " << (same ? "yes" : "no");
}

void pipeline_transport(Outcome& o, const Harness& h) {
    auto psi_h = make_psi_handle(h.sk);
    const std::vector<OraclePrefix> probes{OraclePrefix("0"), OraclePrefix("01101")};
    auto transported = transport_impredictability(wp_many_one(Z, S3), wp_reducer(Z, S3), psi_h, probes, 20);
    std::uint64_t total = 0, matched = 0, undecided = 0;
    for (const auto& e : h.report.entries) {
        std::vector<std::uint64_t> ps;
        for (const auto& w : e.witnesses) ps.push_back(w.p);
        for (const auto& r : transport_witnesses(Z, S3, psi_h, transported, h.a, ps)) {
            ++total;
            if (!r.wp_bit) ++undecided;
            else if (*r.wp_bit == r.set_bit) ++matched;
        }
    }
    o.detail << total << " witnesses, " << matched << " matched, " << undecided << " undecided";
    o.require(total > 0, "no witnesses");
    o.require(matched == total, "transported bit differs");
}

// ---------------------------------------------------------------- 8

void simulator(Outcome& o) {
    const auto det = eleven_detector(Z);
    const auto m1 = membership_test(det, 1, 100);
    const auto m2 = membership_test(det, 2, 100);
    o.require(!m1.in_s, "x^1 not rejected");
    o.require(m2.in_s, "x^2 rejected");

    const auto det3 = eleven_detector_3(Z);
    const OraclePrefix wp(wp_prefix(Z, 64));
    std::uint64_t agree = 0;
    for (std::uint64_t p = 1; p <= 3; ++p) {
        const bool halted = predictor(det3, p, wp, 100) == Prediction::Halted;
        agree += halted == !membership_test(det3, p, 100).in_s;
    }
    o.require(agree == 3, "predictor disagrees");

    std::mt19937 rng(8);
    std::uint64_t violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const GroupCtx g = trial % 2 ? GroupCtx::grigorchuk() : Z;
        const auto spec = testing::random_spec(rng, g);
        const auto x = make_xp(1 + rng() % 4);
        const DirectOracle dir(g);
        RunState a = place(spec, spec.initial[0], Cell{{}, 0});
        RunState b = a;
        for (int n = 0; n < 100; ++n) {
            a = step(spec, x, a, dir);
            b = step(spec, x, b, dir);
            if (a.heads.size() != spec.heads) ++violations;
        }
        if (!(a == b)) ++violations;
    }
    o.require(violations == 0, "head conservation or determinism");
    o.detail << "p=1 " << (m1.in_s ? "InS" : "rejected") << " (phase " << m1.phase << "), p=2 "
             << (m2.in_s ? "InS" : "rejected") << ", predictor agrees on " << agree << "/3, " << violations
             << " invariant violations over 100 specs";
}

// ---------------------------------------------------------------- 9

void subshift_counts(Outcome& o) {
    std::mt19937_64 rng(9);
    std::uint64_t checks = 0, mismatches = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto prefix = random_prefix(rng, 9, 3);
        std::set<int> a;
        for (int d = 1; d < 9; ++d)
            if (prefix.bit(static_cast<std::size_t>(d))) a.insert(d);
        for (int n = 0; n <= 4; ++n) {
            const auto lang = enumerate_language(Z, prefix, static_cast<std::uint64_t>(n));
            const std::size_t b = ball(Z, static_cast<std::uint64_t>(n))->size();
            std::size_t pairs = 0;
            for (int i = -n; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j) pairs += a.contains(j - i) ? 0 : 1;
            ++checks;
            if (lang.size() != 1 + b + pairs || lang.size() != oracle::z_language_size(n, a)) ++mismatches;
        }
    }
    o.detail << checks << " checks, " << mismatches << " mismatches";
    o.require(mismatches == 0, "count mismatch");
}

}  // namespace

int main() {
    bool all = true;
    auto report = [&](int n, const std::string& name, const std::function<void(Outcome&)>& body) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        all = all && o.pass;
        std::string text = o.detail.str();
        if (!o.failed.empty()) text += (text.empty() ? "" : "; ") + ("failed: " + o.failed);
        std::printf("criterion %d %s: %s  [%s] (%.1fs)\n", n, o.pass ? "PASS" : "FAIL", name.c_str(), text.c_str(),
                    secs);
        std::fflush(stdout);
    };

    report(1, "embedding equivalence", embedding_equivalence);
    report(2, "conjunctive reduction coherence", conj_coherence);
    report(3, "quotient probe", quotient_probe);
    report(4, "torsion bound", torsion_bound);
    report(5, "grigorchuk word problem", grigorchuk_wp);
    Harness h;
    report(6, "impredictability harness", [&](Outcome& o) {
        h = build_harness();
        impredictability_harness(o, h);
    });
    report(7, "pipeline transport", [&](Outcome& o) { pipeline_transport(o, h); });
    report(8, "simulator", simulator);
    report(9, "subshift counts", subshift_counts);
    return all ? 0 : 1;
}
