#include "torsionlab/rate.hpp"

#include <sstream>

#include "torsionlab/errors.hpp"

namespace torsionlab {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

std::uint64_t saturating_pow2(std::uint64_t n) { return n >= 64 ? UINT64_MAX : std::uint64_t{1} << n; }

RateFunction RateFunction::identity() {
    return {"identity", [](std::uint64_t n) { return n; }};
}

RateFunction RateFunction::linear(std::uint64_t a, std::uint64_t b) {
    return {"linear:" + std::to_string(a) + ":" + std::to_string(b),
            [a, b](std::uint64_t n) { return saturating_add(saturating_mul(a, n), b); }};
}

RateFunction RateFunction::square() {
    return {"square", [](std::uint64_t n) { return saturating_mul(n, n); }};
}

RateFunction RateFunction::exponential() {
    return {"exp", [](std::uint64_t n) { return saturating_pow2(n); }};
}

RateFunction RateFunction::exp_tower(unsigned height) {
    return {"tower" + std::to_string(height), [height](std::uint64_t n) {
                for (unsigned i = 0; i < height; ++i) n = saturating_pow2(n);
                return n;
            }};
}

RateFunction RateFunction::table(std::vector<std::uint64_t> values) {
    if (values.empty()) throw DomainError("rate table must not be empty");
    std::string name = "table:";
    for (std::size_t i = 0; i < values.size(); ++i) name += (i ? "," : "") + std::to_string(values[i]);
    return {name, [v = std::move(values)](std::uint64_t n) { return n < v.size() ? v[n] : v.back(); }};
}

RateFunction RateFunction::constant(std::uint64_t c) {
    return {"const:" + std::to_string(c), [c](std::uint64_t) { return c; }};
}

RateFunction RateFunction::compose(const RateFunction& outer, const RateFunction& inner) {
    return {outer.name() + " o " + inner.name(), [o = outer.fn_, i = inner.fn_](std::uint64_t n) { return o(i(n)); }};
}

RateFunction RateFunction::parse(std::string_view spec) {
    const std::string s(spec);
    if (s == "identity" || s == "id") return identity();
    if (s == "square") return square();
    if (s == "exp" || s == "exponential") return exponential();
    if (s.starts_with("tower")) return exp_tower(s.size() > 5 ? static_cast<unsigned>(std::stoul(s.substr(5))) : 5);
    auto numbers = [&](std::string rest, char sep) {
        std::vector<std::uint64_t> out;
        std::istringstream in(rest);
        for (std::string tok; std::getline(in, tok, sep);) {
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                throw ParseError("bad rate spec '" + s + "'");
            out.push_back(std::stoull(tok));
        }
        return out;
    };
    if (s.starts_with("linear:")) {
        auto v = numbers(s.substr(7), ':');
        if (v.size() != 2) throw ParseError("linear rate needs linear:a:b");
        return linear(v[0], v[1]);
    }
    if (s.starts_with("const:")) {
        auto v = numbers(s.substr(6), ':');
        if (v.size() != 1) throw ParseError("constant rate needs const:c");
        return constant(v[0]);
    }
    if (s.starts_with("table:")) return table(numbers(s.substr(6), ','));
    throw ParseError("unknown rate '" + s + "'");
}

}  // namespace torsionlab
