#ifndef GES2N_RNG_HPP
#define GES2N_RNG_HPP

// Portable seeded random stream.  mt19937_64 is fully specified by the
// standard, and the uniform/gaussian mappings are written out explicitly
// (53-bit mantissa scaling, Box-Muller) instead of using std distributions,
// whose output is implementation-defined.  Identical seeds therefore yield
// identical streams on every platform.

#include <cmath>
#include <cstdint>
#include <random>

namespace ges2n {

class random_stream {
  public:
    explicit random_stream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t raw() { return engine_(); }

    // uniform on [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // standard normal via Box-Muller on two uniforms
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ges2n

#endif  // GES2N_RNG_HPP
