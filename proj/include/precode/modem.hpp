#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "precode/errors.hpp"

namespace precode {

// Square M-QAM with per-dimension levels {+-1, +-3, ..., +-(sqrt(M)-1)}.
struct QamSpec {
    int mod_order = 16;
    int bits_per_symbol = 4;
    int side = 4;                  // sqrt(M)
    double symbol_variance = 10.0; // 2(M-1)/3
};

QamSpec qam_spec(int mod_order);

// Per-dimension Gray mapping, I bits first. For M=16: 00->-3, 01->-1,
// 11->+1, 10->+3 on each dimension.
std::vector<std::complex<double>> map_bits(const std::vector<std::uint8_t>& bits,
                                           int mod_order);

// Eq.-defined modulo onto [-sqrt(M), sqrt(M)) per dimension.
std::complex<double> mod_reduce(std::complex<double> x, int mod_order);

// Minimum-distance per-dimension slicing (ties toward the smaller coordinate)
// followed by the inverse Gray map.
std::vector<std::uint8_t> demap(std::complex<double> y, int mod_order);

// Nearest alphabet point itself (the slicing step of demap).
std::complex<double> slice_symbol(std::complex<double> y, int mod_order);

}  // namespace precode
