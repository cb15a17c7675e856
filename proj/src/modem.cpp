#include "precode/modem.hpp"

#include <cmath>
#include <string>

namespace precode {

namespace {

int int_sqrt(int m) {
    int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
    return s;
}

int gray_decode(int g) {
    int b = 0;
    for (; g; g >>= 1) b ^= g;
    return b;
}

int gray_encode(int b) { return b ^ (b >> 1); }

int bits_per_dim(const QamSpec& spec) { return spec.bits_per_symbol / 2; }

}  // namespace

QamSpec qam_spec(int mod_order) {
    const int side = int_sqrt(mod_order);
    if (mod_order < 4 || side * side != mod_order) {
        throw ParamError("qam_spec: M must be a square number >= 4, got " +
                         std::to_string(mod_order));
    }
    QamSpec spec;
    spec.mod_order = mod_order;
    spec.side = side;
    spec.bits_per_symbol = static_cast<int>(std::lround(std::log2(mod_order)));
    spec.symbol_variance = 2.0 * (mod_order - 1) / 3.0;
    return spec;
}

std::vector<std::complex<double>> map_bits(const std::vector<std::uint8_t>& bits,
                                           int mod_order) {
    const QamSpec spec = qam_spec(mod_order);
    const int bps = spec.bits_per_symbol;
    if (bits.size() % bps != 0) {
        throw ParamError("map_bits: bit count " + std::to_string(bits.size()) +
                         " not divisible by log2(M) = " + std::to_string(bps));
    }
    const int bpd = bits_per_dim(spec);
    std::vector<std::complex<double>> out;
    out.reserve(bits.size() / bps);
    for (std::size_t i = 0; i < bits.size(); i += bps) {
        int gi = 0, gq = 0;
        for (int b = 0; b < bpd; ++b) gi = (gi << 1) | bits[i + b];
        for (int b = 0; b < bpd; ++b) gq = (gq << 1) | bits[i + bpd + b];
        const double re = 2.0 * gray_decode(gi) - (spec.side - 1);
        const double im = 2.0 * gray_decode(gq) - (spec.side - 1);
        out.emplace_back(re, im);
    }
    return out;
}

std::complex<double> mod_reduce(std::complex<double> x, int mod_order) {
    const double r = 2.0 * std::sqrt(static_cast<double>(mod_order));
    const double re = x.real() - r * std::floor(0.5 + x.real() / r);
    const double im = x.imag() - r * std::floor(0.5 + x.imag() / r);
    return {re, im};
}

std::complex<double> slice_symbol(std::complex<double> y, int mod_order) {
    const QamSpec spec = qam_spec(mod_order);
    auto slice_dim = [&](double v) {
        // Tie at a decision boundary resolves toward the smaller coordinate.
        double idx = std::ceil((v + spec.side) / 2.0) - 1.0;
        idx = std::min(std::max(idx, 0.0), static_cast<double>(spec.side - 1));
        return 2.0 * idx - (spec.side - 1);
    };
    return {slice_dim(y.real()), slice_dim(y.imag())};
}

std::vector<std::uint8_t> demap(std::complex<double> y, int mod_order) {
    const QamSpec spec = qam_spec(mod_order);
    const int bpd = bits_per_dim(spec);
    const std::complex<double> d = slice_symbol(y, mod_order);
    const int gi = gray_encode(static_cast<int>((d.real() + spec.side - 1) / 2));
    const int gq = gray_encode(static_cast<int>((d.imag() + spec.side - 1) / 2));
    std::vector<std::uint8_t> out(spec.bits_per_symbol);
    for (int b = 0; b < bpd; ++b) {
        out[b] = static_cast<std::uint8_t>((gi >> (bpd - 1 - b)) & 1);
        out[bpd + b] = static_cast<std::uint8_t>((gq >> (bpd - 1 - b)) & 1);
    }
    return out;
}

}  // namespace precode
