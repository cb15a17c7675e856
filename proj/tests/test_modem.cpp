#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "precode/modem.hpp"

using namespace precode;
using cplx = std::complex<double>;

namespace {
std::vector<std::uint8_t> to_bits(std::initializer_list<int> v) {
    return {v.begin(), v.end()};
}
}  // namespace

TEST_CASE("qam_spec validates the order and derives P_s") {
    const QamSpec s = qam_spec(16);
    CHECK(s.side == 4);
    CHECK(s.bits_per_symbol == 4);
    CHECK(s.symbol_variance == 10.0);
    CHECK(qam_spec(64).symbol_variance == 42.0);
    CHECK_THROWS_AS(qam_spec(8), ParamError);
    CHECK_THROWS_AS(qam_spec(2), ParamError);
    CHECK_THROWS_AS(qam_spec(0), ParamError);
}

TEST_CASE("Gray mapping: fixed 16-QAM table entries") {
    CHECK(map_bits(to_bits({0, 0, 0, 0}), 16)[0] == cplx(-3, -3));
    CHECK(map_bits(to_bits({1, 1, 1, 1}), 16)[0] == cplx(1, 1));
    CHECK(map_bits(to_bits({0, 1, 1, 0}), 16)[0] == cplx(-1, 3));
    CHECK(map_bits(to_bits({1, 0, 0, 1}), 16)[0] == cplx(3, -1));
}

TEST_CASE("Gray map/demap round trip is exhaustive") {
    for (int m : {4, 16, 64}) {
        const int bps = qam_spec(m).bits_per_symbol;
        for (int word = 0; word < m; ++word) {
            std::vector<std::uint8_t> bits(bps);
            for (int b = 0; b < bps; ++b)
                bits[b] = static_cast<std::uint8_t>((word >> (bps - 1 - b)) & 1);
            const auto sym = map_bits(bits, m)[0];
            CHECK(demap(sym, m) == bits);
        }
    }
}

TEST_CASE("adjacent constellation points differ in exactly one bit per axis") {
    // Gray property: stepping one level on one dimension flips one bit.
    for (double re = -3; re <= 1; re += 2) {
        const auto a = demap(cplx(re, -3), 16);
        const auto b = demap(cplx(re + 2, -3), 16);
        int flips = 0;
        for (int i = 0; i < 4; ++i) flips += a[i] != b[i];
        CHECK(flips == 1);
    }
}

TEST_CASE("mod_reduce: worked examples and range") {
    CHECK(mod_reduce(cplx(5, 0), 16) == cplx(-3, 0));
    CHECK(mod_reduce(cplx(4, 0), 16) == cplx(-4, 0));
    CHECK(mod_reduce(cplx(-4, 0), 16) == cplx(-4, 0));
    CHECK(mod_reduce(cplx(0, 9), 16) == cplx(0, 1));
    for (double v = -20.0; v <= 20.0; v += 0.37) {
        const auto r = mod_reduce(cplx(v, -v), 16);
        CHECK(r.real() >= -4.0);
        CHECK(r.real() < 4.0);
        CHECK(r.imag() >= -4.0);
        CHECK(r.imag() < 4.0);
    }
}

TEST_CASE("mod_reduce: idempotent and lattice invariant") {
    for (double re = -3.7; re <= 3.7; re += 0.9) {
        for (double im = -3.7; im <= 3.7; im += 0.9) {
            const cplx x(re, im);
            const cplx r = mod_reduce(x, 16);
            CHECK(mod_reduce(r, 16) == r);
            CHECK(std::abs(mod_reduce(x + cplx(16, -24), 16) - r) <= 1e-12);
        }
    }
}

TEST_CASE("slice ties resolve toward the smaller coordinate") {
    CHECK(slice_symbol(cplx(0, 0), 16) == cplx(-1, -1));
    CHECK(slice_symbol(cplx(2, -2), 16) == cplx(1, -3));
    CHECK(slice_symbol(cplx(9, -9), 16) == cplx(3, -3));  // clamped
    CHECK(slice_symbol(cplx(0.1, -0.1), 16) == cplx(1, -1));
}

TEST_CASE("alphabet has the stated average symbol energy") {
    double acc = 0.0;
    for (int word = 0; word < 16; ++word) {
        std::vector<std::uint8_t> bits(4);
        for (int b = 0; b < 4; ++b)
            bits[b] = static_cast<std::uint8_t>((word >> (3 - b)) & 1);
        acc += std::norm(map_bits(bits, 16)[0]);
    }
    CHECK(acc / 16 == doctest::Approx(10.0).epsilon(1e-12));
}
