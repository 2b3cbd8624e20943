#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <random>

namespace ddcma {

// Seedable normal/uniform source with an explicitly specified mapping from
// engine output to floats, so streams are reproducible across standard
// libraries (std::normal_distribution is implementation-defined).  State is
// text-serializable for checkpoints, including the cached Box-Muller half.
class NormalRng {
public:
    explicit NormalRng(std::uint64_t seed = 1) : gen_(seed) {}

    // Uniform on [0,1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; consumes two engine outputs per pair.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0,1] keeps the log finite.
        const double u1 =
            (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t raw() { return gen_(); }

    void save(std::ostream& os) const;
    void load(std::istream& is);

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// 64-bit mixing (splitmix64 finalizer); used to derive independent
// per-component seeds from a base seed.
std::uint64_t mix_seed(std::uint64_t x);

} // namespace ddcma
