#include "doctest.h"

#include <random>

#include "torsionlab/errors.hpp"
#include "torsionlab/impred.hpp"
#include "torsionlab/pipeline.hpp"

using namespace torsionlab;

TEST_CASE("program text") {
    auto p = ToyProgram::parse("INC 0\n# comment\nDECJZ 1 0 \n  oracle 2\nHALT");
    REQUIRE(p.code.size() == 4);
    CHECK(p.registers() == 3);
    CHECK(ToyProgram::parse(p.format()) == p);
    CHECK(ToyProgram::parse(p.format_inline()) == p);
    CHECK(p.format_inline() == "INC 0; DECJZ 1 0; ORACLE 2; HALT");
    CHECK_THROWS_AS(ToyProgram::parse("DECJZ 0 5"), ParseError);
    CHECK_THROWS_AS(ToyProgram::parse("JMP 1"), ParseError);
    CHECK_THROWS_AS(ToyProgram::parse("INC"), ParseError);
    CHECK_THROWS_AS(ToyProgram::parse("INC x"), ParseError);
}

TEST_CASE("run_program examples") {
    const OraclePrefix none;
    for (std::uint64_t in : {0, 1, 17}) {
        auto r = run_program(ToyProgram::halt(), in, none, 10);
        CHECK(r.halted());
        CHECK(r.steps == 1);
    }
    for (std::uint64_t cap : {0, 1, 10, 10000}) CHECK(!run_program(ToyProgram::loop(), 0, none, cap).halted());
    CHECK(!run_program(ToyProgram::halt(), 0, none, 0).halted());

    const OraclePrefix a("0110");
    for (std::uint64_t in = 0; in < 4; ++in) {
        auto r = run_program(ToyProgram::oracle_echo(), in, a, 1000);
        CHECK(r.halted() == a.bit(in));
        CHECK(!r.tainted);
    }
    auto beyond = run_program(ToyProgram::oracle_echo(), 9, a, 1000);
    CHECK(!beyond.halted());
    CHECK(beyond.tainted);

    // falling off the end never halts
    CHECK(!run_program(ToyProgram::parse("INC 0"), 0, none, 100).halted());

    // counts down its input, then halts
    auto countdown = ToyProgram::parse("DECJZ 0 2\nDECJZ 1 0\nHALT");
    auto r = run_program(countdown, 3, none, 1000);
    CHECK(r.halted());
    CHECK(r.steps == 3 * 2 + 2);
    CHECK(!run_program(countdown, 3, none, 7).halted());
}

TEST_CASE("machine enumeration") {
    for (std::uint64_t n = 0; n < 2000; ++n) {
        auto [i, j] = MachineEnumeration::unpair(n);
        CHECK(MachineEnumeration::pair(i, j) == n);
    }
    for (const auto& p : {ToyProgram::halt(), ToyProgram::loop(), ToyProgram::oracle_echo()}) {
        auto code = MachineEnumeration::encode(p);
        REQUIRE(code);
        CHECK(MachineEnumeration::decode(*code) == p);
        // recurs at infinitely many indices
        auto e = MachineEnumeration::cantor();
        for (std::uint64_t j = 0; j < 5; ++j) CHECK(e.program(MachineEnumeration::pair(*code, j)) == p);
    }
    std::mt19937_64 rng(1);
    for (int k = 0; k < 500; ++k) {
        const std::uint64_t i = rng() % 100000000;
        auto p = MachineEnumeration::decode(i);
        CHECK(!p.code.empty());
        if (auto c = MachineEnumeration::encode(p); c && *c == i) CHECK(ToyProgram::parse(p.format()) == p);
    }
    auto roster = MachineEnumeration::roster({ToyProgram::halt(), ToyProgram::loop()});
    CHECK(roster.program(4) == ToyProgram::halt());
    CHECK(roster.program(5) == ToyProgram::loop());
    CHECK_THROWS_AS(MachineEnumeration::roster({}), DomainError);
}

TEST_CASE("rates") {
    CHECK(RateFunction::identity()(7) == 7);
    CHECK(RateFunction::square()(7) == 49);
    CHECK(RateFunction::exponential()(10) == 1024);
    CHECK(RateFunction::exponential()(70) == UINT64_MAX);
    CHECK(RateFunction::exp_tower(2)(3) == 256);
    CHECK(RateFunction::exp_tower(5)(1) == UINT64_MAX);
    CHECK(RateFunction::table({1, 4, 9})(5) == 9);
    CHECK(RateFunction::linear(3, 1)(4) == 13);
    CHECK(RateFunction::compose(RateFunction::square(), RateFunction::linear(1, 1))(2) == 9);
    CHECK(RateFunction::parse("linear:2:0")(5) == 10);
    CHECK(RateFunction::parse("table:0,1")(1) == 1);
    CHECK(RateFunction::parse("tower3")(1) == 16);
    CHECK_THROWS_AS(RateFunction::parse("cubic"), ParseError);
}

TEST_CASE("skeleton for the identity rate") {
    const auto sk = build_skeleton(RateFunction::identity(), 3);
    REQUIRE(sk.stages().size() == 3);
    const auto& s0 = sk.stages()[0];
    CHECK(s0.m == 0);
    REQUIRE(s0.rules.size() == 1);
    CHECK(s0.rules[0].p == 0);
    CHECK(s0.rules[0].position == 1);
    const auto& s1 = sk.stages()[1];
    CHECK(s1.m == 2);
    REQUIRE(s1.rules.size() == 4);
    for (std::uint64_t i = 0; i < 4; ++i) {
        CHECK(s1.rules[i].p == 2 + i);
        CHECK(s1.rules[i].position == 6 + i);
    }
    CHECK(s1.word(s1.rules[1]) == "01");
    const auto& s2 = sk.stages()[2];
    CHECK(s2.m == 10);
    CHECK(s2.rules.size() == 1024);
    CHECK(s2.rules.front().p == 10);
    CHECK(s2.rules.back().position == 2057);
    CHECK(sk.length() == 2058);

    CHECK_THROWS_AS(build_skeleton(RateFunction::identity(), 4), CapacityError);
    try {
        build_skeleton(RateFunction::identity(), 4);
    } catch (const CapacityError& e) {
        CHECK(e.attained() == 3);
    }
}

TEST_CASE("skeleton structure") {
    for (const auto& phi : {RateFunction::identity(), RateFunction::square(), RateFunction::linear(2, 3),
                            RateFunction::table({5, 0, 0, 7, 1, 9, 9, 12})}) {
        const std::uint64_t stages = phi.name() == "identity" ? 3 : 2;
        const auto sk = build_skeleton(phi, stages);
        // stages tile an initial segment: [m, M] out, then the psi values
        std::uint64_t expect_m = 0;
        std::set<std::uint64_t> ps;
        for (const auto& st : sk.stages()) {
            CHECK(st.m == expect_m);
            std::set<std::uint64_t> positions;
            for (const auto& r : st.rules) {
                CHECK(phi(r.p) >= st.m);
                CHECK(r.oracle_length == phi(r.p));
                CHECK(r.position > st.max_phi);
                CHECK(r.position <= st.last);
                positions.insert(r.position);
                CHECK(ps.insert(r.p).second);  // fresh across stages
                auto pad = st.padded_prefix(r);
                CHECK(pad.size() == std::max(st.m, r.oracle_length));
                CHECK(pad.bits().substr(0, st.m) == st.word(r));
                CHECK(pad.bits().find('1', st.m) == std::string::npos);
            }
            CHECK(positions.size() == st.rules.size());
            CHECK(st.last == st.max_phi + st.rules.size());
            expect_m = st.last + 1;
        }
        CHECK(sk.length() == expect_m);
        CHECK(sk.serialize() == build_skeleton(phi, stages).serialize());
    }
    CHECK(build_skeleton(RateFunction::identity(), 3).psi(999999) == 0);
    CHECK(psi(RateFunction::identity(), 3, 2) == 7);
    CHECK_THROWS_AS(build_skeleton(RateFunction::constant(0), 2), CapacityError);
}

TEST_CASE("approx_A") {
    const auto sk = build_skeleton(RateFunction::identity(), 3);
    auto all_halt = approx_A(sk, MachineEnumeration::roster({ToyProgram::halt()}), 10);
    auto all_loop = approx_A(sk, MachineEnumeration::roster({ToyProgram::loop()}), 10000);
    for (const auto& st : sk.stages())
        for (const auto& r : st.rules) CHECK(all_halt.bit(r.position));
    CHECK(!all_loop.any_one_below(all_loop.size()));
    CHECK(all_halt.bits().find('1') == 1);

    // nondecreasing in step_cap; the countdown program needs about 2p steps
    auto slow = MachineEnumeration::roster({ToyProgram::parse("DECJZ 0 2\nDECJZ 1 0\nHALT")});
    OraclePrefix prev = approx_A(sk, slow, 0);
    for (std::uint64_t cap : {1, 5, 20, 100, 1000, 5000}) {
        auto cur = approx_A(sk, slow, cap);
        CHECK(letterwise_leq(prev, cur));
        prev = cur;
    }
    CHECK(prev.bit(2057));

    // stage correctness: the index of the true prefix feeds its rule exactly that prefix
    auto echo = MachineEnumeration::roster({ToyProgram::oracle_echo(), ToyProgram::halt()});
    auto a = approx_A(sk, echo, 1000);
    for (const auto& st : sk.stages()) {
        const std::string truth = a.bits().substr(0, st.m);
        std::uint64_t i = 0;
        for (char c : truth) i = 2 * i + (c == '1');
        const auto& r = st.rules[i];
        CHECK(st.word(r) == truth);
        CHECK(st.padded_prefix(r).bits() == a.truncated(r.oracle_length).bits());
    }
}

TEST_CASE("impredictability witnesses") {
    const std::vector<ToyProgram> roster{ToyProgram::halt(), ToyProgram::loop(), ToyProgram::oracle_echo()};
    auto report = check_impredictability(RateFunction::identity(), roster, 3, 10000, 2100);
    REQUIRE(report.entries.size() == 3);
    CHECK(report.entries[0].member_count() >= 1);
    CHECK(report.entries[1].assigned_nonmember_count() >= 1);
    CHECK(report.entries[1].member_count() == 0);
    CHECK(report.entries[2].witnesses.size() >= 1);
    CHECK(check_impredictability(RateFunction::identity(), {}, 3, 100, 10).entries.empty());
}

TEST_CASE("rate restriction and transport") {
    auto sk = std::make_shared<const Skeleton>(build_skeleton(RateFunction::square(), 2));
    auto h = make_psi_handle(sk);
    CHECK(restrict_rate(h, RateFunction::square(), RateFunction::square(), 100)(3) == h(3));
    auto slower = restrict_rate(h, RateFunction::square(), RateFunction::identity(), 100);
    CHECK(slower.rate.name() == "identity");
    for (std::uint64_t p = 0; p < 30; ++p) CHECK(slower(p) == h(p));
    CHECK_THROWS_AS(restrict_rate(h, RateFunction::identity(), RateFunction::square(), 10), PreconditionError);
    auto hi = make_psi_handle(std::make_shared<const Skeleton>(build_skeleton(RateFunction::identity(), 2)));
    CHECK_THROWS_AS(restrict_rate(hi, RateFunction::identity(), RateFunction::square(), 10), PreconditionError);

    // the identity-rate property re-verified with the same handle
    const std::vector<ToyProgram> roster{ToyProgram::halt(), ToyProgram::loop()};
    auto a = approx_A(*sk, MachineEnumeration::roster(roster), 1000);
    auto rep = check_witnesses(slower, a, roster, 1000, 200);
    CHECK(rep.entries[0].member_count() >= 1);
    CHECK(rep.entries[1].assigned_nonmember_count() >= 1);

    const std::vector<OraclePrefix> probes{OraclePrefix("0"), OraclePrefix("0101")};
    ManyOneMap id{"id", [](const BigNat& n) { return n; }};
    WttReducer gid{"id", [](const OraclePrefix& u) { return u; }, RateFunction::identity()};
    auto same = transport_impredictability(id, gid, h, probes, 10);
    for (std::uint64_t p = 0; p < 30; ++p) CHECK(same(p) == h(p));
    WttReducer flat{"zero", [](const OraclePrefix&) { return OraclePrefix(); }, RateFunction::constant(0)};
    CHECK_THROWS_AS(transport_impredictability(id, flat, h, probes, 10), PreconditionError);
    WttReducer liar{"short", [](const OraclePrefix&) { return OraclePrefix("0"); }, RateFunction::identity()};
    CHECK_THROWS_AS(transport_impredictability(id, liar, h, probes, 10), RateViolation);
}

TEST_CASE("transport onto the word problem of K") {
    const auto Z = GroupCtx::integers();
    const auto S3 = GroupCtx::s3();
    auto sk = std::make_shared<const Skeleton>(build_skeleton(RateFunction::identity(), 2));
    auto h = make_psi_handle(sk);
    const std::vector<OraclePrefix> probes{OraclePrefix("0"), OraclePrefix("01101")};
    auto t = transport_impredictability(wp_many_one(Z, S3), wp_reducer(Z, S3), h, probes, 20);
    CHECK(t(0) == many_one_index(Z, S3, 1));
    CHECK(t(999) == 1);

    const std::vector<ToyProgram> roster{ToyProgram::halt(), ToyProgram::loop()};
    auto a = approx_A(*sk, MachineEnumeration::roster(roster), 100);
    auto rows = transport_witnesses(Z, S3, h, t, a, {0, 1, 2, 3, 4, 5, 6});
    for (const auto& r : rows) {
        REQUIRE(r.wp_bit);
        CHECK(*r.wp_bit == r.set_bit);
    }
}
