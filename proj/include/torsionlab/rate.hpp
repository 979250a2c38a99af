#pragma once

// Named total functions N -> N used as oracle-length rates. Arithmetic
// saturates at UINT64_MAX.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace torsionlab {

class RateFunction {
public:
    using Fn = std::function<std::uint64_t(std::uint64_t)>;

    RateFunction(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

    static RateFunction identity();
    /// n -> a*n + b
    static RateFunction linear(std::uint64_t a, std::uint64_t b);
    static RateFunction square();
    /// n -> 2^n
    static RateFunction exponential();
    /// 2^2^...^n, `height` times.
    static RateFunction exp_tower(unsigned height = 5);
    /// Explicit values; beyond the table the last value repeats.
    static RateFunction table(std::vector<std::uint64_t> values);
    static RateFunction constant(std::uint64_t c);
    /// outer o inner
    static RateFunction compose(const RateFunction& outer, const RateFunction& inner);

    /// "identity", "square", "exp", "tower5", "linear:a:b", "const:c", "table:1,2,3".
    static RateFunction parse(std::string_view spec);

    std::uint64_t operator()(std::uint64_t n) const { return fn_(n); }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    Fn fn_;
};

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_pow2(std::uint64_t n);

}  // namespace torsionlab
