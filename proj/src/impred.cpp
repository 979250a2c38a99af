#include "torsionlab/impred.hpp"

#include <set>
#include <sstream>

#include "torsionlab/errors.hpp"

namespace torsionlab {

std::string Stage::word(const StageRule& r) const {
    std::string w(m, '0');
    for (std::uint64_t b = 0; b < m; ++b)
        if (r.word >> (m - 1 - b) & 1) w[b] = '1';
    return w;
}

OraclePrefix Stage::padded_prefix(const StageRule& r) const {
    return OraclePrefix(word(r)).padded(r.oracle_length);
}

Skeleton::Skeleton(RateFunction phi, std::vector<Stage> stages) : phi_(std::move(phi)), stages_(std::move(stages)) {
    for (const auto& st : stages_)
        for (const auto& r : st.rules) psi_.emplace(r.p, r.position);
}

std::uint64_t Skeleton::length() const { return stages_.empty() ? 0 : stages_.back().last + 1; }

std::optional<std::uint64_t> Skeleton::assigned(std::uint64_t p) const {
    if (auto it = psi_.find(p); it != psi_.end()) return it->second;
    return std::nullopt;
}

std::uint64_t Skeleton::psi(std::uint64_t p) const { return assigned(p).value_or(default_nonmember()); }

std::string Skeleton::serialize() const {
    std::ostringstream out;
    out << "skeleton phi=" << phi_.name() << " stages=" << stages_.size() << " length=" << length() << '\n';
    for (const auto& st : stages_) {
        out << "stage " << st.index << " m=" << st.m << " M=" << st.max_phi << " M'=" << st.last << '\n';
        for (const auto& r : st.rules)
            out << "rule p=" << r.p << " psi=" << r.position << " w=" << st.word(r) << " phi=" << r.oracle_length
                << '\n';
    }
    return out.str();
}

Skeleton build_skeleton(const RateFunction& phi, std::uint64_t stages, const SkeletonBudget& budget) {
    std::vector<Stage> out;
    std::set<std::uint64_t> used;
    std::uint64_t m = 0;
    std::uint64_t next_candidate = 0;  // every smaller p is used or has phi(p) < an earlier m
    for (std::uint64_t t = 0; t < stages; ++t) {
        auto fail = [&](const std::string& why) {
            throw CapacityError("stage " + std::to_string(t) + ": " + why, t);
        };
        if (m >= 64 || (std::uint64_t{1} << m) > budget.max_words)
            fail("2^" + std::to_string(m) + " candidate prefixes exceed the word budget");
        const std::uint64_t count = std::uint64_t{1} << m;
        Stage st;
        st.index = t;
        st.m = m;
        std::uint64_t tried = 0;
        for (std::uint64_t p = next_candidate; st.rules.size() < count; ++p) {
            if (++tried > budget.max_search) fail("no p with phi(p) >= " + std::to_string(m) + " within search budget");
            if (used.contains(p)) continue;
            const std::uint64_t len = phi(p);
            if (len < m) continue;
            if (len > budget.max_length) fail("phi(" + std::to_string(p) + ") exceeds the length budget");
            st.rules.push_back({st.rules.size(), p, 0, len});
        }
        st.max_phi = m;
        for (const auto& r : st.rules) st.max_phi = std::max(st.max_phi, r.oracle_length);
        if (st.max_phi + count + 1 > budget.max_length) fail("determined prefix exceeds the length budget");
        for (auto& r : st.rules) {
            r.position = st.max_phi + 1 + r.word;
            used.insert(r.p);
        }
        st.last = st.max_phi + count;
        // phi is arbitrary, so untouched small p may still qualify later
        while (used.contains(next_candidate)) ++next_candidate;
        m = st.last + 1;
        out.push_back(std::move(st));
    }
    return Skeleton(phi, std::move(out));
}

std::uint64_t psi(const RateFunction& phi, std::uint64_t p, std::uint64_t stages) {
    return build_skeleton(phi, stages).psi(p);
}

OraclePrefix approx_A(const Skeleton& sk, const MachineEnumeration& machines, std::uint64_t step_cap) {
    std::string bits(sk.length(), '0');
    for (const auto& st : sk.stages()) {
        const ToyProgram chi = machines.program(st.index);
        for (const auto& r : st.rules)
            if (run_program(chi, r.p, st.padded_prefix(r), step_cap).halted()) bits[r.position] = '1';
    }
    return OraclePrefix(std::move(bits));
}

OraclePrefix approx_A(const RateFunction& phi, std::uint64_t stages, const MachineEnumeration& machines,
                      std::uint64_t step_cap) {
    return approx_A(build_skeleton(phi, stages), machines, step_cap);
}

// ---------------------------------------------------------------- handles

BigNat PsiHandle::operator()(std::uint64_t p) const { return post(BigNat(skeleton->psi(p))); }

PsiHandle make_psi_handle(std::shared_ptr<const Skeleton> sk) {
    RateFunction rate = sk->rate();
    return PsiHandle{std::move(sk), std::move(rate), [](const BigNat& n) { return n; }, "psi"};
}

PsiHandle restrict_rate(const PsiHandle& h, const RateFunction& phi_prime, const RateFunction& phi,
                        std::uint64_t range) {
    if (h.rate.name() != phi_prime.name())
        throw PreconditionError("handle is for rate " + h.rate.name() + ", not " + phi_prime.name());
    for (std::uint64_t n = 0; n <= range; ++n)
        if (phi(n) > phi_prime(n))
            throw PreconditionError(phi.name() + "(" + std::to_string(n) + ") exceeds " + phi_prime.name() + "(" +
                                    std::to_string(n) + ")");
    PsiHandle out = h;
    out.rate = phi;
    return out;
}

PsiHandle transport_impredictability(const ManyOneMap& f, const WttReducer& g, const PsiHandle& h,
                                     std::span<const OraclePrefix> probes, std::uint64_t range) {
    bool grows = false;
    for (std::uint64_t n = 1; n <= range && !grows; ++n) grows = g.beta(n) > g.beta(0);
    if (!grows) throw PreconditionError("rate " + g.beta.name() + " is constant on [0, " + std::to_string(range) + "]");
    for (const auto& w : probes) {
        const auto out = g.g(w);
        if (out.size() < g.beta(w.size()))
            throw RateViolation(g.name + " maps a prefix of length " + std::to_string(w.size()) + " to " +
                                std::to_string(out.size()) + " bits, below " + g.beta.name() + " = " +
                                std::to_string(g.beta(w.size())));
    }
    return PsiHandle{h.skeleton, RateFunction::compose(g.beta, h.rate),
                     [f = f.f, inner = h.post](const BigNat& n) { return f(inner(n)); },
                     f.name + " o " + h.description};
}

// ---------------------------------------------------------------- witness search

std::size_t WitnessEntry::member_count() const {
    std::size_t n = 0;
    for (const auto& w : witnesses) n += w.member ? 1 : 0;
    return n;
}

std::size_t WitnessEntry::assigned_nonmember_count() const {
    std::size_t n = 0;
    for (const auto& w : witnesses) n += (w.assigned && !w.member) ? 1 : 0;
    return n;
}

WitnessReport check_witnesses(const PsiHandle& h, const OraclePrefix& set_prefix, const std::vector<ToyProgram>& roster,
                              std::uint64_t step_cap, std::uint64_t max_p) {
    WitnessReport report;
    report.step_cap = step_cap;
    for (const auto& chi : roster) {
        WitnessEntry e;
        e.program = chi.format_inline();
        for (std::uint64_t p = 0; p <= max_p; ++p) {
            ++e.tested;
            const BigNat pos = h(p);
            if (pos >= set_prefix.size()) {
                ++e.undecided;
                continue;
            }
            const bool member = set_prefix.bit(static_cast<std::size_t>(pos));
            const auto run = run_program(chi, p, set_prefix.truncated(h.rate(p)), step_cap);
            e.tainted = e.tainted || run.tainted;
            if (member == run.halted()) e.witnesses.push_back({p, pos, member, h.skeleton->assigned(p).has_value()});
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

WitnessReport check_impredictability(const RateFunction& phi, const std::vector<ToyProgram>& roster,
                                     std::uint64_t stages, std::uint64_t step_cap, std::uint64_t max_p) {
    if (roster.empty()) return WitnessReport{step_cap, {}};
    auto sk = std::make_shared<const Skeleton>(build_skeleton(phi, stages));
    const OraclePrefix a = approx_A(*sk, MachineEnumeration::roster(roster), step_cap);
    return check_witnesses(make_psi_handle(sk), a, roster, step_cap, max_p);
}

}  // namespace torsionlab
