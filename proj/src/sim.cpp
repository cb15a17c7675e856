#include "precode/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace precode {

namespace {

constexpr std::uint64_t kBatchBlocks = 32;
constexpr double kPi = 3.14159265358979323846;

struct BlockResult {
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
    bool degenerate = false;
};

// Everything fixed for one (scheme, Eb/N0) point.
struct PointContext {
    const SystemConfig* cfg;
    Scheme scheme;
    CorrelationSet corr;
    InnerPrecoder inner;  // grouped schemes only
    bool has_inner = false;
    double sigma_z2 = 0.0;
    double p_tx = 0.0;
    QamSpec qam;
};

BlockResult run_block(const PointContext& ctx, std::uint64_t block) {
    const SystemConfig& cfg = *ctx.cfg;
    const int k = cfg.k;
    const int bps = ctx.qam.bits_per_symbol;
    const int kbar = cfg.k / cfg.g;

    RngStream ch_rng = RngStream::substream(cfg.seed, kTagChannel, block);
    const CMatrix h = sample_channel(ctx.corr, kbar, ch_rng);

    // Builds happen once per coherence block. Singular factors from the QR
    // based schemes count as degenerate realizations, like flagged builds.
    LinearPrecoderState lin;
    ThpState thp;
    HlthpState hl;
    // The noiseless sentinel still needs an invertible regularizer for the
    // linear builds ("weak regularization").
    const double reg_sigma = ctx.sigma_z2 > 0.0 ? ctx.sigma_z2 : 1e-9;
    try {
        switch (ctx.scheme) {
            case Scheme::Rzf:
                lin = build_rzf(h, reg_sigma, ctx.p_tx);
                if (lin.degenerate) return {0, 0, true};
                break;
            case Scheme::PgpRzf:
                lin = build_pgp_rzf(ctx.inner, h, reg_sigma, ctx.p_tx);
                if (lin.degenerate) return {0, 0, true};
                break;
            case Scheme::Thp:
                thp = build_thp(h, cfg.mod_order);
                break;
            default:
                hl = build_hlthp(ctx.inner, h, cfg.mod_order);
                break;
        }
    } catch (const SingularFactorError&) {
        return {0, 0, true};
    }

    RngStream pay_rng = RngStream::substream(cfg.seed, kTagPayload, block);
    const double noise_amp = std::sqrt(ctx.sigma_z2);

    BlockResult res;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(k) * bps);
    CVector d(k), noise(k), r(k), detected(k);
    for (int t = 0; t < cfg.t; ++t) {
        for (auto& b : bits) b = static_cast<std::uint8_t>(pay_rng.bit());
        const auto symbols = map_bits(bits, cfg.mod_order);
        for (int i = 0; i < k; ++i) d(i) = symbols[i];
        for (int i = 0; i < k; ++i) noise(i) = noise_amp * pay_rng.cgauss();

        CVector s;
        switch (ctx.scheme) {
            case Scheme::Rzf:
            case Scheme::PgpRzf: s = lin.v * d; break;
            case Scheme::Thp: s = thp_encode(thp, d); break;
            default: s = hlthp_encode(hl, d); break;
        }
        r = h.adjoint() * s + noise;
        switch (ctx.scheme) {
            case Scheme::Rzf:
            case Scheme::PgpRzf:
                detected = receive_linear(lin, r, cfg.mod_order, cfg.rx_mode);
                break;
            case Scheme::Thp: detected = receive_thp(thp, r); break;
            default: detected = receive_hlthp(hl, r); break;
        }
        for (int i = 0; i < k; ++i) {
            const auto got = demap(detected(i), cfg.mod_order);
            for (int b = 0; b < bps; ++b) {
                res.errors += got[b] != bits[static_cast<std::size_t>(i) * bps + b];
            }
        }
        res.bits += static_cast<std::uint64_t>(k) * bps;
    }
    return res;
}

}  // namespace

void SystemConfig::validate() const {
    if (n < 1 || k < 1 || g < 1) throw ParamError("config: N, K, G must be >= 1");
    if (k % g != 0) {
        throw ParamError("config: G=" + std::to_string(g) +
                         " does not divide K=" + std::to_string(k));
    }
    qam_spec(mod_order);  // throws on non-square M
    if (t < 1) throw ParamError("config: T must be >= 1");
    if (!(delta_deg > 0.0)) throw ParamError("config: delta_deg must be > 0");
    if (workers < 1) throw ParamError("config: workers must be >= 1");
    if (min_bit_errors == 0 && max_blocks == 0) {
        throw ParamError("config: min_bit_errors and max_blocks cannot both be 0");
    }
}

double noise_variance(double ebn0_db, int mod_order, int k, double p_tx) {
    const QamSpec spec = qam_spec(mod_order);
    if (k < 1 || !(p_tx > 0.0)) throw ParamError("noise_variance: bad K or P_TX");
    if (std::isinf(ebn0_db) && ebn0_db > 0) return 0.0;
    if (!std::isfinite(ebn0_db)) throw ParamError("noise_variance: bad Eb/N0");
    return p_tx /
           (k * spec.bits_per_symbol * std::pow(10.0, ebn0_db / 10.0));
}

BerRecord run_ber_point(const SystemConfig& cfg, Scheme scheme, double ebn0_db) {
    cfg.validate();

    PointContext ctx;
    ctx.cfg = &cfg;
    ctx.scheme = scheme;
    ctx.qam = qam_spec(cfg.mod_order);
    ctx.p_tx = cfg.k * ctx.qam.symbol_variance;
    ctx.sigma_z2 = noise_variance(ebn0_db, cfg.mod_order, cfg.k, ctx.p_tx);
    ctx.corr = make_correlation_set(cfg.n, cfg.g, cfg.delta_deg * kPi / 180.0,
                                    cfg.omega, cfg.quad_points, cfg.angle_model,
                                    cfg.root_mode);
    if (scheme == Scheme::PgpRzf || scheme == Scheme::Hlthp) {
        ctx.inner = build_inner(ctx.corr, cfg.k / cfg.g, cfg.lg_policy);
        ctx.has_inner = true;
    }

    BerRecord rec;
    rec.scheme = scheme;
    rec.ebn0_db = ebn0_db;

    std::uint64_t next_block = 0;
    std::uint64_t processed = 0;
    const std::uint64_t no_cap = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t cap = cfg.max_blocks == 0 ? no_cap : cfg.max_blocks;

    while (processed < cap) {
        const std::uint64_t batch =
            std::min<std::uint64_t>(kBatchBlocks, cap - processed);
        std::vector<BlockResult> results(batch);
        const int nw = static_cast<int>(
            std::min<std::uint64_t>(static_cast<std::uint64_t>(cfg.workers), batch));
        if (nw <= 1) {
            for (std::uint64_t i = 0; i < batch; ++i) {
                results[i] = run_block(ctx, next_block + i);
            }
        } else {
            std::atomic<std::uint64_t> cursor{0};
            std::vector<std::thread> pool;
            pool.reserve(nw);
            for (int w = 0; w < nw; ++w) {
                pool.emplace_back([&] {
                    for (std::uint64_t i = cursor.fetch_add(1); i < batch;
                         i = cursor.fetch_add(1)) {
                        results[i] = run_block(ctx, next_block + i);
                    }
                });
            }
            for (auto& th : pool) th.join();
        }
        for (const auto& br : results) {
            if (br.degenerate) {
                ++rec.degenerate_blocks;
            } else {
                rec.errors += br.errors;
                rec.bits += br.bits;
                ++rec.blocks_used;
            }
        }
        next_block += batch;
        processed += batch;
        if (cfg.min_bit_errors > 0 && rec.errors >= cfg.min_bit_errors) break;
    }

    if (processed > 0 && rec.degenerate_blocks * 100 > processed) {
        throw Error("run_ber_point: more than 1% of blocks degenerate (" +
                    std::to_string(rec.degenerate_blocks) + " of " +
                    std::to_string(processed) + ")");
    }
    rec.ber = rec.bits ? static_cast<double>(rec.errors) / rec.bits : 0.0;
    return rec;
}

std::vector<BerRecord> sweep(const SystemConfig& cfg) {
    cfg.validate();
    std::vector<BerRecord> out;
    for (Scheme s : cfg.schemes) {
        for (double ebn0 : cfg.ebn0_grid_db) {
            out.push_back(run_ber_point(cfg, s, ebn0));
        }
    }
    return out;
}

}  // namespace precode
