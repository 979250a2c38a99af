// torsionlab: batch front end. Every subcommand prints one JSON report that
// embeds its manifest and the version stamps.
//
// exit codes: 0 ok, 2 usage, 3 oracle shortage, 4 capacity, 1 other errors

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "torsionlab/automata.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/group.hpp"
#include "torsionlab/impred.hpp"
#include "torsionlab/kgroup.hpp"
#include "torsionlab/machine.hpp"
#include "torsionlab/pipeline.hpp"
#include "torsionlab/rate.hpp"
#include "torsionlab/subshift.hpp"
#include "torsionlab/version.hpp"

using namespace torsionlab;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitShortage = 3;
constexpr int kExitCapacity = 4;

std::string big(const BigNat& n) { return n.str(); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ToyProgram roster_program(const std::string& name) {
    if (name == "halt") return ToyProgram::halt();
    if (name == "loop") return ToyProgram::loop();
    if (name == "echo") return ToyProgram::oracle_echo();
    if (name.rfind("file:", 0) == 0) return ToyProgram::parse(read_file(name.substr(5)));
    return ToyProgram::parse(name);
}

std::vector<ToyProgram> roster_programs(const std::vector<std::string>& names) {
    std::vector<ToyProgram> out;
    for (const auto& n : names)
        if (n != "none") out.push_back(roster_program(n));
    return out;
}

json roster_json(const std::vector<ToyProgram>& roster) {
    json a = json::array();
    for (const auto& p : roster) a.push_back(p.format_inline());
    return a;
}

// --------------------------------------------------------------- oracle source

struct OracleSource {
    std::string bits;
    std::string file;
    std::string build_phi;
    std::uint64_t build_stages = 2;
    std::uint64_t build_cap = 1000;
    std::vector<std::string> build_roster{"halt", "loop", "echo"};

    void add_to(CLI::App* app) {
        auto* b = app->add_option("--bits", bits, "oracle prefix as a 0/1 string");
        auto* f = app->add_option("--oracle-file", file, "file holding a 0/1 string");
        auto* p = app->add_option("--build-phi", build_phi, "build the oracle from a skeleton at this rate");
        b->excludes(f)->excludes(p);
        f->excludes(p);
        app->add_option("--build-stages", build_stages)->capture_default_str();
        app->add_option("--build-cap", build_cap, "step cap for approx_A")->capture_default_str();
        app->add_option("--build-roster", build_roster)->capture_default_str();
    }

    json manifest() const {
        json m;
        if (!bits.empty()) {
            m["kind"] = "bits";
            m["bits"] = bits;
        } else if (!file.empty()) {
            m["kind"] = "file";
            m["path"] = file;
        } else if (!build_phi.empty()) {
            m["kind"] = "builder";
            m["phi"] = build_phi;
            m["stages"] = build_stages;
            m["step_cap"] = build_cap;
            m["roster"] = build_roster;
        } else {
            m["kind"] = "none";
        }
        return m;
    }

    OraclePrefix resolve() const {
        if (!bits.empty()) return OraclePrefix(bits);
        if (!file.empty()) {
            std::string text = read_file(file);
            std::string clean;
            for (char c : text)
                if (!std::isspace(static_cast<unsigned char>(c))) clean.push_back(c);
            return OraclePrefix(clean);
        }
        if (!build_phi.empty()) {
            auto sk = build_skeleton(RateFunction::parse(build_phi), build_stages);
            return approx_A(sk, MachineEnumeration::roster(roster_programs(build_roster)), build_cap);
        }
        return OraclePrefix();
    }
};

json stamped(const std::string& subcommand, json manifest, json result) {
    json r;
    json m{{"subcommand", subcommand}};
    m.update(manifest);
    r["manifest"] = std::move(m);
    json v;
    v["torsionlab"] = std::string(kVersion);
    for (const auto& [mod, ver] : kModuleVersions) v[std::string(mod)] = std::string(ver);
    r["versions"] = std::move(v);
    r["result"] = std::move(result);
    return r;
}

// --------------------------------------------------------------- group

struct GroupArgs {
    std::string ctx;
    std::optional<std::uint64_t> ball_radius;
    std::optional<std::uint64_t> torsion;
    std::vector<std::string> norm;
    std::vector<std::string> order;
    std::optional<std::uint64_t> wp;
    std::uint64_t cap = 1000;
    bool list = true;
};

json cmd_group(const GroupArgs& a) {
    const GroupCtx g = GroupCtx::parse(a.ctx);
    json res;
    res["group"] = g.name();
    json gens = json::array();
    for (const auto& s : g.generators()) gens.push_back(s);
    res["generators"] = gens;
    if (a.ball_radius) {
        auto b = ball(g, *a.ball_radius);
        json br{{"radius", *a.ball_radius}, {"size", b->size()}};
        json layers = json::array();
        for (std::size_t i = 0; i < b->size(); ++i) {
            if (layers.size() <= b->norm(i)) layers.push_back(0);
            layers[b->norm(i)] = layers[b->norm(i)].get<std::uint64_t>() + 1;
        }
        br["sphere_sizes"] = layers;
        if (a.list) {
            json els = json::array();
            for (std::size_t i = 0; i < b->size(); ++i)
                els.push_back({{"index", i}, {"norm", b->norm(i)}, {"word", format_word(g, b->word(i))}});
            br["elements"] = els;
        }
        res["ball"] = br;
    }
    if (a.torsion) res["torsion"] = {{"n", *a.torsion}, {"cap", a.cap}, {"value", torsion_function(g, *a.torsion, a.cap)}};
    if (!a.norm.empty()) {
        json rows = json::array();
        for (const auto& t : a.norm) rows.push_back({{"element", t}, {"norm", word_norm(g, parse_element(g, t))}});
        res["norms"] = rows;
    }
    if (!a.order.empty()) {
        json rows = json::array();
        for (const auto& t : a.order) {
            auto o = element_order(g, parse_element(g, t), a.cap);
            json row{{"element", t}};
            if (o.infinite)
                row["order"] = "infinite";
            else
                row["order"] = o.value;
            rows.push_back(row);
        }
        res["orders"] = rows;
    }
    if (a.wp) res["wp_prefix"] = wp_prefix(g, *a.wp);
    return res;
}

// --------------------------------------------------------------- kgroup

struct KgroupArgs {
    std::string g = "Z";
    std::string h = "S3";
    OracleSource oracle;
    std::vector<std::string> words;
    std::optional<std::uint64_t> embed;
    bool conj = false;
    std::string upper;
    std::vector<std::string> order;
    std::uint64_t cap = 100000;
    std::uint64_t sample = 0;
    std::uint64_t sample_length = 3;
    std::uint64_t seed = 1;
};

const char* status_name(WpResult::Status s) {
    switch (s) {
        case WpResult::Status::Identity: return "Identity";
        case WpResult::Status::NonIdentity: return "NonIdentity";
        case WpResult::Status::NeedsOracle: return "NeedsOracle";
    }
    return "?";
}

json wp_json(const KContext& ctx, const KWord& w, bool& shortage) {
    auto r = wp_K(ctx, w);
    json j{{"word", format_kword(ctx.g, ctx.h, w)}, {"length", w.size()}, {"status", status_name(r.status)}};
    if (r.status == WpResult::Status::NeedsOracle) {
        j["needed"] = r.needed;
        shortage = true;
    }
    if (r.gamma_image) j["gamma"] = format_element(ctx.g, *r.gamma_image);
    if (r.witness) j["witness"] = format_pattern(*r.witness);
    if (r.h_witness) j["h_image"] = format_element(ctx.h, *r.h_witness);
    return j;
}

json cmd_kgroup(const KgroupArgs& a, bool& shortage) {
    const GroupCtx g = GroupCtx::parse(a.g);
    const GroupCtx h = GroupCtx::parse(a.h);
    const KContext ctx(g, h, a.oracle.resolve());
    json res;
    res["G"] = g.name();
    res["H"] = h.name();
    res["oracle_length"] = ctx.oracle.size();
    res["alphabet_size"] = k_alphabet_size(g, h);

    if (!a.words.empty()) {
        json rows = json::array();
        for (const auto& t : a.words) rows.push_back(wp_json(ctx, parse_kword(g, h, t), shortage));
        res["word_problem"] = rows;
    }
    if (a.embed) {
        json rows = json::array();
        for (std::uint64_t n = 1; n <= *a.embed; ++n) {
            auto w = embed_element(g, h, n);
            auto r = wp_K(ctx, w);
            json row{{"n", n}, {"index", big(many_one_index(g, h, n))}, {"length", w.size()},
                     {"status", status_name(r.status)}};
            if (r.status == WpResult::Status::NeedsOracle) {
                row["needed"] = r.needed;
                shortage = true;
            } else {
                const bool in_a = ctx.oracle.bit(n);
                row["n_in_A"] = in_a;
                row["agrees"] = (r.status == WpResult::Status::Identity) == in_a;
            }
            rows.push_back(row);
        }
        res["embedding"] = rows;
    }
    if (a.conj) {
        auto lo = conj_reduction(g, h, ctx.oracle);
        json c{{"rate", conj_rate(g, h, ctx.oracle.size())}, {"prefix", lo.bits()}};
        if (!a.upper.empty()) {
            const OraclePrefix v(a.upper);
            if (v.size() != ctx.oracle.size()) throw ParseError("--upper must have the oracle's length");
            auto hi = conj_reduction(g, h, v);
            c["upper_input"] = v.bits();
            c["upper_prefix"] = hi.bits();
            c["input_leq"] = letterwise_leq(ctx.oracle, v);
            c["output_leq"] = letterwise_leq(lo, hi);
        }
        res["conj_reduction"] = c;
    }
    if (!a.order.empty()) {
        json rows = json::array();
        for (const auto& t : a.order) {
            auto w = parse_kword(g, h, t);
            rows.push_back({{"word", format_kword(g, h, w)}, {"order", order_K(ctx, w, a.cap)}});
        }
        res["orders"] = rows;
    }
    if (a.sample > 0) {
        std::mt19937_64 rng(a.seed);
        const auto s = k_alphabet_size(g, h);
        json rows = json::array();
        for (std::uint64_t i = 0; i < a.sample; ++i) {
            KWord w;
            const auto len = 1 + rng() % a.sample_length;
            for (std::uint64_t k = 0; k < len; ++k) w.letters.push_back(k_generator(g, h, static_cast<std::uint32_t>(rng() % s)));
            rows.push_back(wp_json(ctx, w, shortage));
        }
        res["sample"] = rows;
    }
    return res;
}

// --------------------------------------------------------------- impred

struct ImpredArgs {
    std::string phi = "identity";
    std::uint64_t stages = 2;
    std::uint64_t step_cap = 1000;
    std::vector<std::string> roster{"halt", "loop", "echo"};
    bool cantor = false;
    std::uint64_t max_p = 64;
    bool rules = true;
};

json stage_json(const Stage& st, bool rules) {
    json s{{"t", st.index}, {"m", st.m}, {"M", st.max_phi}, {"M_prime", st.last}, {"rule_count", st.rules.size()}};
    if (rules) {
        json rs = json::array();
        for (const auto& r : st.rules)
            rs.push_back({{"p", r.p}, {"psi", r.position}, {"w", st.word(r)}, {"phi", r.oracle_length}});
        s["rules"] = rs;
    }
    return s;
}

json witness_json(const WitnessReport& rep) {
    json entries = json::array();
    for (const auto& e : rep.entries) {
        json ws = json::array();
        for (const auto& w : e.witnesses)
            ws.push_back({{"p", w.p}, {"psi", big(w.position)}, {"member", w.member}, {"assigned", w.assigned}});
        entries.push_back({{"program", e.program},
                           {"tested", e.tested},
                           {"undecided", e.undecided},
                           {"tainted", e.tainted},
                           {"members", e.member_count()},
                           {"assigned_nonmembers", e.assigned_nonmember_count()},
                           {"witnesses", ws}});
    }
    return {{"step_cap", rep.step_cap}, {"entries", entries}};
}

json cmd_impred(const ImpredArgs& a) {
    const auto phi = RateFunction::parse(a.phi);
    auto sk = std::make_shared<const Skeleton>(build_skeleton(phi, a.stages));
    const auto roster = roster_programs(a.roster);
    json res;
    res["phi"] = phi.name();
    res["length"] = sk->length();
    json st = json::array();
    for (const auto& s : sk->stages()) st.push_back(stage_json(s, a.rules));
    res["stages"] = st;

    json psi_rows = json::array();
    std::set<std::uint64_t> seen;
    bool injective = true;
    for (std::uint64_t p = 0; p <= a.max_p; ++p) {
        auto as = sk->assigned(p);
        if (!as) continue;
        injective = injective && seen.insert(*as).second;
        psi_rows.push_back({{"p", p}, {"psi", *as}});
    }
    res["psi"] = {{"assigned", psi_rows}, {"default", sk->default_nonmember()}, {"injective_on_assigned", injective}};

    if (a.cantor) {
        res["A"] = approx_A(*sk, MachineEnumeration::cantor(), a.step_cap).bits();
    } else if (!roster.empty()) {
        auto A = approx_A(*sk, MachineEnumeration::roster(roster), a.step_cap);
        res["A"] = A.bits();
        res["witnesses"] = witness_json(check_witnesses(make_psi_handle(sk), A, roster, a.step_cap, a.max_p));
    } else {
        res["witnesses"] = witness_json(WitnessReport{a.step_cap, {}});
    }
    return res;
}

// --------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string spec_file;
    std::string preset;
    std::string group = "Z";
    std::vector<std::uint64_t> ps{1, 2};
    std::uint64_t cap = 100;
    std::optional<std::uint64_t> trace;
    bool predict = false;
    std::uint64_t wp_length = 64;
    bool emit_spec = false;
};

json cmd_simulate(const SimulateArgs& a) {
    AutomatonSpec spec;
    if (!a.spec_file.empty()) {
        spec = parse_automaton(read_file(a.spec_file));
    } else if (a.preset == "eleven") {
        spec = eleven_detector(GroupCtx::parse(a.group));
    } else if (a.preset == "eleven3") {
        spec = eleven_detector_3(GroupCtx::parse(a.group));
    } else {
        throw ParseError("need --spec or --preset eleven|eleven3");
    }
    json res;
    res["group"] = spec.g.name();
    res["heads"] = spec.heads;
    if (a.emit_spec) res["spec"] = json::parse(format_automaton(spec));
    const OraclePrefix wp = a.predict ? OraclePrefix(wp_prefix(spec.g, a.wp_length)) : OraclePrefix();
    json rows = json::array();
    for (auto p : a.ps) {
        auto m = membership_test(spec, p, a.cap);
        json row{{"p", p}, {"in_S", m.in_s}};
        if (!m.in_s) row["witness"] = {{"phase", m.phase}, {"step", m.step}, {"initial", m.initial}};
        if (a.predict) row["prediction"] = predictor(spec, p, wp, a.cap) == Prediction::Halted ? "Halted" : "Running";
        if (a.trace) {
            const auto x = make_xp(p);
            row["separation"] = separation_trace(spec, x, Cell{{}, 0}, *a.trace);
            row["trace"] = trace_records(spec, x, Cell{{}, 0}, *a.trace);
        }
        rows.push_back(row);
    }
    res["runs"] = rows;
    return res;
}

// --------------------------------------------------------------- pipeline

struct PipelineArgs {
    std::string phi = "identity";
    std::uint64_t stages = 2;
    std::uint64_t step_cap = 1000;
    std::vector<std::string> roster{"halt", "loop"};
    std::string g = "Z";
    std::string h = "S3";
    std::uint64_t max_p = 16;
};

json cmd_pipeline(const PipelineArgs& a) {
    const GroupCtx g = GroupCtx::parse(a.g);
    const GroupCtx h = GroupCtx::parse(a.h);
    const auto phi = RateFunction::parse(a.phi);
    auto sk = std::make_shared<const Skeleton>(build_skeleton(phi, a.stages));
    const auto roster = roster_programs(a.roster);
    auto psi_h = make_psi_handle(sk);
    const std::vector<OraclePrefix> probes{OraclePrefix("0"), OraclePrefix("01101")};
    auto transported = transport_impredictability(wp_many_one(g, h), wp_reducer(g, h), psi_h, probes, 20);

    json res;
    res["G"] = g.name();
    res["H"] = h.name();
    res["phi"] = phi.name();
    res["transported"] = transported.description;
    res["transported_rate"] = transported.rate.name();
    res["skeleton_length"] = sk->length();
    json entries = json::array();
    if (!roster.empty()) {
        auto A = approx_A(*sk, MachineEnumeration::roster(roster), a.step_cap);
        auto rep = check_witnesses(psi_h, A, roster, a.step_cap, a.max_p);
        for (const auto& e : rep.entries) {
            std::vector<std::uint64_t> ps;
            for (const auto& w : e.witnesses) ps.push_back(w.p);
            auto rows = transport_witnesses(g, h, psi_h, transported, A, ps);
            json out = json::array();
            std::uint64_t matched = 0, undecided = 0;
            for (const auto& r : rows) {
                json row{{"p", r.p}, {"psi", r.position}, {"psi_prime", big(r.word_index)}, {"set_bit", r.set_bit}};
                if (r.wp_bit) {
                    row["wp_bit"] = *r.wp_bit;
                    matched += *r.wp_bit == r.set_bit;
                } else {
                    row["wp_bit"] = nullptr;
                    ++undecided;
                }
                out.push_back(row);
            }
            entries.push_back({{"program", e.program},
                               {"witnesses", e.witnesses.size()},
                               {"transported_matches", matched},
                               {"undecided", undecided},
                               {"rows", out}});
        }
    }
    res["entries"] = entries;
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"torsionlab"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("-o,--out", out_path, "write the report here instead of stdout");

    GroupArgs ga;
    auto* grp = app.add_subcommand("group", "norms, balls, orders, torsion function");
    grp->add_option("--ctx", ga.ctx, "Z, S3, grigorchuk, or factors joined by ' x '")->required();
    grp->add_option("--ball", ga.ball_radius, "list the ball of this radius");
    grp->add_option("--torsion", ga.torsion, "torsion function at n");
    grp->add_option("--norm", ga.norm, "element(s)");
    grp->add_option("--order", ga.order, "element(s)");
    grp->add_option("--wp-prefix", ga.wp, "characteristic prefix of the word problem");
    grp->add_option("--cap", ga.cap)->capture_default_str();
    grp->add_flag("!--no-list", ga.list, "omit ball elements");

    KgroupArgs ka;
    auto* kg = app.add_subcommand("kgroup", "word problem, embedding, reductions and orders in K(G,A,H)");
    kg->add_option("--G", ka.g)->capture_default_str();
    kg->add_option("--H", ka.h)->capture_default_str();
    ka.oracle.add_to(kg);
    kg->add_option("--word", ka.words, "K-word tokens like 'S:+1 M:(12):1'");
    kg->add_option("--embed", ka.embed, "embedding table for n = 1..N");
    kg->add_flag("--conj", ka.conj, "dump the reduced prefix");
    kg->add_option("--upper", ka.upper, "second prefix for the monotonicity dump");
    kg->add_option("--order", ka.order, "K-word(s)");
    kg->add_option("--cap", ka.cap)->capture_default_str();
    kg->add_option("--sample", ka.sample, "random words to decide");
    kg->add_option("--sample-length", ka.sample_length)->capture_default_str();
    kg->add_option("--seed", ka.seed)->capture_default_str();

    ImpredArgs ia;
    auto* im = app.add_subcommand("impred", "skeleton, psi, approximations of A, witnesses");
    im->add_option("--phi", ia.phi)->capture_default_str();
    im->add_option("--stages", ia.stages)->capture_default_str();
    im->add_option("--step-cap", ia.step_cap)->capture_default_str();
    im->add_option("--roster", ia.roster, "halt, loop, echo, file:PATH, inline program, or none")
        ->capture_default_str();
    im->add_flag("--cantor", ia.cantor, "use the full machine enumeration");
    im->add_option("--max-p", ia.max_p)->capture_default_str();
    im->add_flag("!--no-rules", ia.rules);

    SimulateArgs sa;
    auto* si = app.add_subcommand("simulate", "run group-walking automata on x^p");
    si->add_option("--spec", sa.spec_file, "automaton JSON file");
    si->add_option("--preset", sa.preset, "eleven or eleven3");
    si->add_option("--group", sa.group, "group for presets")->capture_default_str();
    si->add_option("--p", sa.ps)->capture_default_str();
    si->add_option("--cap", sa.cap)->capture_default_str();
    si->add_option("--trace", sa.trace, "export the first N steps from phase 0");
    si->add_flag("--predict", sa.predict, "also run the predictor");
    si->add_option("--wp-length", sa.wp_length, "predictor oracle length")->capture_default_str();
    si->add_flag("--emit-spec", sa.emit_spec);

    PipelineArgs pa;
    auto* pl = app.add_subcommand("pipeline", "impredictable A, then its transport to the word problem of K(G,A,H)");
    pl->add_option("--phi", pa.phi)->capture_default_str();
    pl->add_option("--stages", pa.stages)->capture_default_str();
    pl->add_option("--step-cap", pa.step_cap)->capture_default_str();
    pl->add_option("--roster", pa.roster)->capture_default_str();
    pl->add_option("--G", pa.g)->capture_default_str();
    pl->add_option("--H", pa.h)->capture_default_str();
    pl->add_option("--max-p", pa.max_p)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    json manifest;
    json result;
    std::string name;
    bool shortage = false;
    try {
        if (grp->parsed()) {
            name = "group";
            manifest = {{"groups", {ga.ctx}}, {"caps", {{"order", ga.cap}}}};
            if (ga.ball_radius) manifest["ball"] = *ga.ball_radius;
            if (ga.torsion) manifest["torsion"] = *ga.torsion;
            if (!ga.norm.empty()) manifest["norm"] = ga.norm;
            if (!ga.order.empty()) manifest["order"] = ga.order;
            if (ga.wp) manifest["wp_prefix"] = *ga.wp;
            result = cmd_group(ga);
        } else if (kg->parsed()) {
            name = "kgroup";
            manifest = {{"groups", {ka.g, ka.h}}, {"oracle", ka.oracle.manifest()}, {"caps", {{"order", ka.cap}}}};
            if (!ka.words.empty()) manifest["words"] = ka.words;
            if (ka.embed) manifest["embed"] = *ka.embed;
            if (ka.conj) manifest["conj"] = true;
            if (!ka.upper.empty()) manifest["upper"] = ka.upper;
            if (!ka.order.empty()) manifest["order"] = ka.order;
            if (ka.sample) manifest["sample"] = {{"count", ka.sample}, {"max_length", ka.sample_length}, {"seed", ka.seed}};
            result = cmd_kgroup(ka, shortage);
        } else if (im->parsed()) {
            name = "impred";
            manifest = {{"phi", ia.phi},
                        {"stages", ia.stages},
                        {"caps", {{"step", ia.step_cap}, {"max_p", ia.max_p}}},
                        {"machines", ia.cantor ? json("cantor") : roster_json(roster_programs(ia.roster))}};
            result = cmd_impred(ia);
        } else if (si->parsed()) {
            name = "simulate";
            manifest = {{"spec", sa.spec_file.empty() ? sa.preset : sa.spec_file},
                        {"groups", {sa.group}},
                        {"p", sa.ps},
                        {"caps", {{"step", sa.cap}}}};
            if (sa.trace) manifest["trace"] = *sa.trace;
            if (sa.predict) manifest["oracle"] = {{"kind", "wp_prefix"}, {"length", sa.wp_length}};
            result = cmd_simulate(sa);
        } else {
            name = "pipeline";
            manifest = {{"groups", {pa.g, pa.h}},
                        {"phi", pa.phi},
                        {"stages", pa.stages},
                        {"caps", {{"step", pa.step_cap}, {"max_p", pa.max_p}}},
                        {"roster", roster_json(roster_programs(pa.roster))}};
            result = cmd_pipeline(pa);
        }
    } catch (const OracleShortage& e) {
        std::cerr << "oracle shortage: " << e.what() << " (need " << e.needed() << " bits)\n";
        return kExitShortage;
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << " (attained " << e.attained() << ")\n";
        return kExitCapacity;
    } catch (const CapExceeded& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const ParseError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (!out_path.empty()) manifest["output"] = out_path;
    const std::string text = stamped(name, manifest, result).dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << text;
    }
    if (shortage) {
        std::cerr << "oracle shortage: some words need a longer prefix\n";
        return kExitShortage;
    }
    return 0;
}
