#include "precode/precoding.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

namespace precode {

namespace {

constexpr double kDegenerateTrace = 1e-30;

double thp_tx_scale(int mod_order) {
    return std::sqrt((mod_order - 1.0) / mod_order);
}

RVector real_diag_gains(const CMatrix& h, const CMatrix& v) {
    const int k = static_cast<int>(h.cols());
    RVector gains(k);
    for (int i = 0; i < k; ++i) gains(i) = (h.col(i).adjoint() * v.col(i))(0).real();
    return gains;
}

}  // namespace

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Rzf: return "rzf";
        case Scheme::PgpRzf: return "pgp-rzf";
        case Scheme::Thp: return "thp";
        default: return "hlthp";
    }
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "rzf") return Scheme::Rzf;
    if (name == "pgp-rzf" || name == "pgp_rzf" || name == "pgp") return Scheme::PgpRzf;
    if (name == "thp") return Scheme::Thp;
    if (name == "hlthp" || name == "hl-thp" || name == "hl_thp") return Scheme::Hlthp;
    throw ParamError("unknown scheme '" + name + "'");
}

LinearPrecoderState build_rzf(const CMatrix& h, double sigma_z2, double p_tx) {
    if (!(sigma_z2 > 0.0) || !(p_tx > 0.0)) {
        throw ParamError("build_rzf: sigma_z2 and P_TX must be positive");
    }
    const int k = static_cast<int>(h.cols());
    const double alpha = k * sigma_z2 / p_tx;
    CMatrix vi = h * regularized_gram_inverse(h, alpha);
    const double tr = vi.squaredNorm();

    LinearPrecoderState state;
    if (tr <= kDegenerateTrace) {
        state.v = CMatrix::Zero(h.rows(), k);
        state.zeta = {0.0};
        state.degenerate = true;
    } else {
        const double zeta = std::sqrt(k / tr);
        state.v = zeta * vi;
        state.zeta = {zeta};
    }
    state.effective_gains = real_diag_gains(h, state.v);
    return state;
}

int resolve_l(const CorrelationSet& corr, int users_per_group,
              const LgPolicy& policy) {
    const int g_count = corr.n_groups();
    const int n = corr.n_antennas;
    if (users_per_group < 1) throw ParamError("resolve_l: users_per_group < 1");
    if (g_count < 1) throw ParamError("resolve_l: empty correlation set");
    if (n < users_per_group) {
        throw FeasibilityError("resolve_l: fewer antennas than users per group", 1);
    }
    if (g_count == 1) {
        // No other groups to avoid; L is irrelevant but kept >= 1 for bookkeeping.
        return policy.kind == LgPolicy::Kind::Fixed ? std::max(policy.fixed_l, 1) : 1;
    }
    const int cap = (n - users_per_group) / (g_count - 1);
    if (cap < 1) {
        throw FeasibilityError(
            "resolve_l: no L >= 1 satisfies N - (G-1)L >= K/G (N=" +
                std::to_string(n) + ", G=" + std::to_string(g_count) +
                ", K/G=" + std::to_string(users_per_group) + ")",
            1);
    }
    if (policy.kind == LgPolicy::Kind::Fixed) {
        if (policy.fixed_l < 1) throw ParamError("resolve_l: fixed L must be >= 1");
        if (policy.fixed_l > cap) {
            throw FeasibilityError(
                "resolve_l: fixed L=" + std::to_string(policy.fixed_l) +
                    " violates N - (G-1)L >= K/G for group 1",
                1);
        }
        return policy.fixed_l;
    }
    int l = 1;
    for (const auto& eig : corr.eig) {
        const double lambda_max = eig.values(0);
        int count = 0;
        for (int i = 0; i < eig.values.size(); ++i) {
            if (eig.values(i) >= policy.threshold * lambda_max) ++count;
        }
        l = std::max(l, count);
    }
    return std::min(std::max(l, 1), cap);
}

InnerPrecoder build_inner(const CorrelationSet& corr, int users_per_group,
                          const LgPolicy& policy) {
    const int g_count = corr.n_groups();
    const int n = corr.n_antennas;
    const int kbar = users_per_group;
    const int l = resolve_l(corr, kbar, policy);

    InnerPrecoder inner;
    inner.users_per_group = kbar;
    inner.l_retained = l;

    for (int g = 0; g < g_count; ++g) {
        CMatrix e0;
        if (g_count == 1) {
            e0 = CMatrix::Identity(n, n);
        } else {
            CMatrix psi(n, (g_count - 1) * l);
            int col = 0;
            for (int gp = 0; gp < g_count; ++gp) {
                if (gp == g) continue;
                psi.middleCols(col, l) = corr.eig[gp].vectors.leftCols(l);
                col += l;
            }
            Eigen::JacobiSVD<CMatrix> svd(psi, Eigen::ComputeFullU);
            e0 = svd.matrixU().rightCols(n - psi.cols());
        }
        CMatrix proj = e0.adjoint() * corr.corr[g] * e0;
        proj = 0.5 * (proj + proj.adjoint()).eval();
        const EigPair pe = hermitian_eig(proj);
        if (pe.values.size() < kbar) {
            throw FeasibilityError("build_inner: projected space smaller than K/G",
                                   g + 1);
        }
        CMatrix a1 = pe.vectors.leftCols(kbar);
        inner.w.push_back(e0 * a1);
        inner.e0_basis.push_back(std::move(e0));
        inner.a1.push_back(std::move(a1));
    }
    return inner;
}

LinearPrecoderState build_pgp_rzf(const InnerPrecoder& inner, const CMatrix& h,
                                  double sigma_z2, double p_tx) {
    if (!(sigma_z2 > 0.0) || !(p_tx > 0.0)) {
        throw ParamError("build_pgp_rzf: sigma_z2 and P_TX must be positive");
    }
    const int g_count = inner.n_groups();
    const int kbar = inner.users_per_group;
    const int k = static_cast<int>(h.cols());
    if (k != g_count * kbar) {
        throw DimensionError("build_pgp_rzf: H has " + std::to_string(k) +
                             " columns, expected G*K/G = " +
                             std::to_string(g_count * kbar));
    }
    const double alpha = kbar * sigma_z2 / p_tx;

    LinearPrecoderState state;
    state.v = CMatrix::Zero(h.rows(), k);
    for (int g = 0; g < g_count; ++g) {
        const CMatrix ht = h.middleCols(g * kbar, kbar);
        const CMatrix hc = inner.w[g].adjoint() * ht;
        CMatrix p0 = hc * regularized_gram_inverse(hc, alpha);
        const double tr = p0.squaredNorm();
        double zg = 0.0;
        if (tr <= kDegenerateTrace) {
            state.degenerate = true;
        } else {
            zg = std::sqrt(kbar / tr);
        }
        state.zeta.push_back(zg);
        state.v.middleCols(g * kbar, kbar) = inner.w[g] * (zg * p0);
    }
    state.effective_gains = real_diag_gains(h, state.v);
    return state;
}

ThpState build_thp(const CMatrix& h, int mod_order) {
    const QamSpec spec = qam_spec(mod_order);
    const QrPair qr = qr_decompose(h);
    const int k = static_cast<int>(h.cols());

    ThpState state;
    state.f = qr.q;
    state.xi = RVector(k);
    for (int i = 0; i < k; ++i) state.xi(i) = 1.0 / qr.r(i, i).real();
    state.b = state.xi.cast<cplx>().asDiagonal() * qr.r.adjoint();
    // Pin the diagonal to exactly 1 (the invariant the recursion relies on).
    for (int i = 0; i < k; ++i) state.b(i, i) = 1.0;
    state.tx_scale = thp_tx_scale(spec.mod_order);
    state.mod_order = spec.mod_order;
    return state;
}

CVector thp_encode(const ThpState& state, const CVector& d) {
    const int k = static_cast<int>(state.b.rows());
    if (d.size() != k) throw DimensionError("thp_encode: wrong symbol count");
    CVector x(k);
    for (int i = 0; i < k; ++i) {
        cplx acc = d(i);
        for (int l = 0; l < i; ++l) acc -= state.b(i, l) * x(l);
        x(i) = mod_reduce(acc, state.mod_order);
    }
    return state.tx_scale * (state.f * x);
}

HlthpState build_hlthp(const InnerPrecoder& inner, const CMatrix& h,
                       int mod_order) {
    const QamSpec spec = qam_spec(mod_order);
    const int g_count = inner.n_groups();
    const int kbar = inner.users_per_group;
    if (h.cols() != g_count * kbar) {
        throw DimensionError("build_hlthp: H column count does not match inner");
    }

    HlthpState state;
    state.inner = inner;
    state.xi = RVector(g_count * kbar);
    for (int g = 0; g < g_count; ++g) {
        const CMatrix ht = h.middleCols(g * kbar, kbar);
        const CMatrix hc = inner.w[g].adjoint() * ht;
        QrPair qr;
        try {
            qr = qr_decompose(hc);
        } catch (const SingularFactorError& e) {
            throw SingularFactorError(
                "build_hlthp: singular effective channel in group " +
                    std::to_string(g + 1) + ": " + e.what(),
                e.column());
        }
        RVector xig(kbar);
        for (int i = 0; i < kbar; ++i) xig(i) = 1.0 / qr.r(i, i).real();
        CMatrix bg = xig.cast<cplx>().asDiagonal() * qr.r.adjoint();
        for (int i = 0; i < kbar; ++i) bg(i, i) = 1.0;
        state.xi.segment(g * kbar, kbar) = xig;
        state.combined_tx.push_back(inner.w[g] * qr.q);
        state.f.push_back(std::move(qr.q));
        state.b.push_back(std::move(bg));
    }
    state.tx_scale = thp_tx_scale(spec.mod_order);
    state.mod_order = spec.mod_order;
    return state;
}

CVector hlthp_encode(const HlthpState& state, const CVector& d) {
    const int g_count = static_cast<int>(state.b.size());
    const int kbar = state.inner.users_per_group;
    if (d.size() != g_count * kbar) {
        throw DimensionError("hlthp_encode: wrong symbol count");
    }
    const int n = static_cast<int>(state.combined_tx.front().rows());
    CVector s = CVector::Zero(n);
    CVector x(kbar);
    for (int g = 0; g < g_count; ++g) {
        for (int i = 0; i < kbar; ++i) {
            cplx acc = d(g * kbar + i);
            for (int l = 0; l < i; ++l) acc -= state.b[g](i, l) * x(l);
            x(i) = mod_reduce(acc, state.mod_order);
        }
        s += state.combined_tx[g] * x;
    }
    return state.tx_scale * s;
}

CVector receive_linear(const LinearPrecoderState& state, const CVector& r,
                       int mod_order, LinearReceiverMode mode) {
    CVector out(r.size());
    for (int i = 0; i < r.size(); ++i) {
        cplx y = r(i);
        if (mode == LinearReceiverMode::GenieGain) {
            const double gain = state.effective_gains(i);
            if (std::abs(gain) >= 1e-12) y /= gain;
        }
        out(i) = slice_symbol(y, mod_order);
    }
    return out;
}

CVector receive_thp(const ThpState& state, const CVector& r) {
    CVector out(r.size());
    for (int i = 0; i < r.size(); ++i) {
        const cplx y =
            mod_reduce(state.xi(i) * r(i) / state.tx_scale, state.mod_order);
        out(i) = slice_symbol(y, state.mod_order);
    }
    return out;
}

CVector receive_hlthp(const HlthpState& state, const CVector& r) {
    CVector out(r.size());
    for (int i = 0; i < r.size(); ++i) {
        const cplx y =
            mod_reduce(state.xi(i) * r(i) / state.tx_scale, state.mod_order);
        out(i) = slice_symbol(y, state.mod_order);
    }
    return out;
}

}  // namespace precode
