#pragma once

//
// Seeded test-set generation. Draws are built from raw mt19937_64 output so
// the streams are identical across standard library implementations.
//

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "taylor.hpp"

namespace fock_hausdorff {

class TestStream
{
public:
    explicit TestStream(std::uint64_t seed)
        : engine_(seed)
    {}

    // [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::size_t index(std::size_t bound) { return static_cast<std::size_t>(engine_() % bound); }

    // Uniform on the square [-1, 1]².
    Complex unit_square() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    // Uniform on the closed disc of the given radius.
    Complex disc(double radius)
    {
        const double r = radius * std::sqrt(uniform());
        return std::polar(r, 2.0 * std::numbers::pi * uniform());
    }

    // Exactly `degree` (leading coefficient redrawn until nonzero).
    TaylorPolynomial polynomial(std::size_t degree)
    {
        std::vector<Complex> c(degree + 1);
        for (auto & a : c)
            a = unit_square();
        while (c.back() == Complex{})
            c.back() = unit_square();
        return TaylorPolynomial(std::move(c));
    }

    // Degree drawn uniformly from 0..max_degree.
    TaylorPolynomial polynomial_up_to(std::size_t max_degree)
    {
        return polynomial(index(max_degree + 1));
    }

private:
    std::mt19937_64 engine_;
};

// Independent stream for trial i of a seeded experiment.
inline TestStream trial_stream(std::uint64_t seed, std::uint64_t trial)
{
    return TestStream(seed ^ trial);
}

} // namespace fock_hausdorff
