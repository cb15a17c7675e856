#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "precode/channel.hpp"
#include "precode/precoding.hpp"

namespace precode {

// Substream tags: block i draws its channel from (seed, kTagChannel, i) and
// its payload bits + noise from (seed, kTagPayload, i), independent of the
// scheme and of how blocks are scheduled across workers.
inline constexpr std::uint64_t kTagChannel = 1;
inline constexpr std::uint64_t kTagPayload = 2;

struct SystemConfig {
    int n = 32;                 // BS antennas
    int k = 16;                 // UTs
    int g = 4;                  // groups
    int mod_order = 16;
    double omega = 0.5;         // antenna spacing, wavelengths
    double delta_deg = 10.0;    // angular spread, degrees
    int t = 20;                 // symbols per coherence block
    std::vector<double> ebn0_grid_db;
    std::uint64_t max_blocks = 2000;   // 0 = no cap (min_bit_errors must be > 0)
    std::uint64_t min_bit_errors = 200;
    std::uint64_t seed = 1;
    LgPolicy lg_policy = LgPolicy::auto_threshold();
    std::vector<Scheme> schemes = {Scheme::Rzf, Scheme::PgpRzf, Scheme::Thp,
                                   Scheme::Hlthp};
    AngleModel angle_model = AngleModel::Linear;
    RootMode root_mode = RootMode::HermitianSqrt;
    LinearReceiverMode rx_mode = LinearReceiverMode::Literal;
    int quad_points = 512;
    int workers = 1;

    double beta() const { return static_cast<double>(k) / n; }
    void validate() const;  // throws ParamError
};

struct BerRecord {
    Scheme scheme = Scheme::Rzf;
    double ebn0_db = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double ber = 0.0;
    std::uint64_t blocks_used = 0;       // non-degenerate blocks counted
    std::uint64_t degenerate_blocks = 0;
};

// sigma_z^2 = P_TX / (K log2(M) 10^(ebn0/10)); +inf dB maps to 0 (noiseless).
double noise_variance(double ebn0_db, int mod_order, int k, double p_tx);

// Monte-Carlo BER at one (scheme, Eb/N0) point. Blocks are processed in fixed
// batches so the stopping decision (min_bit_errors reached, or max_blocks) is
// independent of the worker count.
BerRecord run_ber_point(const SystemConfig& cfg, Scheme scheme, double ebn0_db);

// Cartesian product of cfg.schemes and cfg.ebn0_grid_db, scheme-major. All
// schemes at a given block index consume identical channel realizations.
std::vector<BerRecord> sweep(const SystemConfig& cfg);

}  // namespace precode
