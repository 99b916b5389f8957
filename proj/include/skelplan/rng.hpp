#ifndef SKELPLAN_RNG_HPP
#define SKELPLAN_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "skelplan/geometry.hpp"

namespace skelplan {

// splitmix64 step; used for deriving sub-seeds from (seed, tags...).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t state = 0x8A5CD789635D2DFFULL;
    std::uint64_t out = 0;
    for (std::uint64_t p : parts) {
        state ^= p;
        out = splitmix64(state);
    }
    return out;
}

// Deterministic random source. All draws go through explicit helpers so a
// given seed reproduces the exact same stream on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, 1)
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // angle in (-pi, pi]
    double uniform_angle() {
        constexpr double pi = 3.14159265358979323846;
        double a = uniform(-pi, pi);
        return a == -pi ? pi : a;
    }

    Vec3 unit_vector(int dim) {
        if (dim == 2) {
            double a = uniform_angle();
            return {std::cos(a), std::sin(a), 0.0};
        }
        double z = uniform(-1.0, 1.0);
        double phi = uniform_angle();
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    // uniform in the closed ball of radius r about c
    Vec3 in_ball(const Vec3& c, double r, int dim) {
        Vec3 dir = unit_vector(dim);
        double u = uniform();
        double scale = dim == 2 ? std::sqrt(u) : std::cbrt(u);
        return c + dir * (r * scale);
    }

    // uniform over SO(3)
    Quat uniform_quat() {
        constexpr double two_pi = 2.0 * 3.14159265358979323846;
        double u1 = uniform(), u2 = uniform(), u3 = uniform();
        double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
        return Quat{a * std::sin(two_pi * u2), a * std::cos(two_pi * u2),
                    b * std::sin(two_pi * u3), b * std::cos(two_pi * u3)};
    }

private:
    std::mt19937_64 eng_;
};

} // namespace skelplan

#endif
