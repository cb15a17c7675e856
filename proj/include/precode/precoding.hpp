#pragma once

#include <vector>

#include "precode/channel.hpp"
#include "precode/linalg.hpp"
#include "precode/modem.hpp"

namespace precode {

enum class Scheme { Rzf, PgpRzf, Thp, Hlthp };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// How the UT detects linear-precoded symbols.
enum class LinearReceiverMode {
    Literal,   // received sample goes straight to the slicer
    GenieGain  // divide by the instantaneous Re{[H^H V]_kk} first
};

struct LinearPrecoderState {
    CMatrix v;                      // N x K precoding matrix
    std::vector<double> zeta;       // one entry (RZF) or one per group (PGP)
    RVector effective_gains;        // Re{[H^H V]_kk}
    bool degenerate = false;
};

struct LgPolicy {
    enum class Kind { Fixed, AutoThreshold };
    Kind kind = Kind::AutoThreshold;
    int fixed_l = 0;
    double threshold = 1e-3;  // relative to lambda_max

    static LgPolicy fixed(int l) { return {Kind::Fixed, l, 0.0}; }
    static LgPolicy auto_threshold(double t = 1e-3) {
        return {Kind::AutoThreshold, 0, t};
    }
};

// Statistical inner precoder: W_g = E0_g A1_g per group.
struct InnerPrecoder {
    int users_per_group = 0;
    int l_retained = 0;                // identical L across groups
    std::vector<CMatrix> w;            // N x K-bar, orthonormal columns
    std::vector<CMatrix> e0_basis;     // orthogonal-complement bases
    std::vector<CMatrix> a1;           // dominant projected eigenvectors

    int n_groups() const { return static_cast<int>(w.size()); }
};

struct ThpState {
    CMatrix f;          // N x K feedforward, orthonormal columns
    CMatrix b;          // K x K lower triangular, unit diagonal
    RVector xi;         // receiver scalings
    double tx_scale = 1.0;
    int mod_order = 16;
    bool degenerate = false;
};

struct HlthpState {
    InnerPrecoder inner;
    std::vector<CMatrix> f;            // K-bar x K-bar unitary per group
    std::vector<CMatrix> b;            // K-bar x K-bar unit-diagonal lower tri
    std::vector<CMatrix> combined_tx;  // W_g F_g, cached
    RVector xi;                        // length K, group-major
    double tx_scale = 1.0;
    int mod_order = 16;
    bool degenerate = false;
};

// V = zeta * H (H^H H + (K sigma_z^2 / P_TX) I)^{-1}, tr(VV^H) = K.
LinearPrecoderState build_rzf(const CMatrix& h, double sigma_z2, double p_tx);

// Resolves the retained eigencount for the policy, capped so that
// N - (G-1) L >= K-bar. Throws FeasibilityError when no L >= 1 works.
int resolve_l(const CorrelationSet& corr, int users_per_group,
              const LgPolicy& policy);

InnerPrecoder build_inner(const CorrelationSet& corr, int users_per_group,
                          const LgPolicy& policy);

LinearPrecoderState build_pgp_rzf(const InnerPrecoder& inner, const CMatrix& h,
                                  double sigma_z2, double p_tx);

ThpState build_thp(const CMatrix& h, int mod_order);

CVector thp_encode(const ThpState& state, const CVector& d);

HlthpState build_hlthp(const InnerPrecoder& inner, const CMatrix& h,
                       int mod_order);

CVector hlthp_encode(const HlthpState& state, const CVector& d);

// Detected symbols (alphabet points).
CVector receive_linear(const LinearPrecoderState& state, const CVector& r,
                       int mod_order,
                       LinearReceiverMode mode = LinearReceiverMode::Literal);
CVector receive_thp(const ThpState& state, const CVector& r);
CVector receive_hlthp(const HlthpState& state, const CVector& r);

}  // namespace precode
