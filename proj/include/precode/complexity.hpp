#pragma once

#include <string>
#include <vector>

#include "precode/errors.hpp"
#include "precode/precoding.hpp"

namespace precode {

// FLOP model: 6 FLOPs per complex multiplication, 2 per complex addition.
struct CostQuery {
    Scheme scheme = Scheme::Rzf;
    int k = 1;  // UT count
    int n = 1;  // BS antenna count
    int g = 1;  // group count (grouped schemes only)
    int t = 1;  // symbols per coherence interval
};

struct CostTerm {
    std::string label;
    double flops;
};

struct CostResult {
    double flops = 0.0;
    std::vector<CostTerm> breakdown;  // sums to flops exactly
};

// Closed-form cost with a labeled per-term breakdown.
CostResult flops(const CostQuery& q);

// Same quantity evaluated from the summary-table row (K-bar = K/G
// substituted). Used as an independent cross-check of flops().
double table1_flops(const CostQuery& q);

// Largest |closed form - table row| over the four schemes.
double check_table1_consistency(int k, int n, int g, int t);

// Schemes sorted by descending cost, one list per K.
std::vector<std::vector<Scheme>> complexity_ordering(const std::vector<int>& ks,
                                                     int n, int g, int t);

}  // namespace precode
