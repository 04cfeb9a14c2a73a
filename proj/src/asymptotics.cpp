#include "regseq/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace regseq::asymptotics {

ExpansionSkeleton skeleton(const LinearRepresentation& rep,
                           const spectral::SpectralReport& spec,
                           const spectral::JsrEstimate& jsr) {
    ExpansionSkeleton out;
    const double log_q = std::log(double(rep.q));
    const double R = jsr.R > 0 ? jsr.R : jsr.upper;
    out.error_exponent = std::log(R) / log_q;
    out.sequence_mode = rep.mode == RepMode::sequence;

    bool any_below = false;
    for (const auto& ev : spec.eigenvalues) {
        double mod = std::abs(ev.lambda);
        // moduli within relative 1e-9 of R count as boundary
        if (mod > R * (1.0 + 1e-9)) {
            out.terms.push_back(Term{ev.lambda, std::log(ev.lambda) / log_q, ev.jordan_max,
                                     std::log(mod / R) / log_q});
        } else if (mod >= R * (1.0 - 1e-9)) {
            out.boundary_eigenvalues.push_back(ev.lambda);
            out.error_log_power = std::max(out.error_log_power, ev.jordan_max);
            any_below = true;
        } else {
            any_below = true;
        }
        if (mod > jsr.lower * (1.0 + 1e-12) && mod <= jsr.upper * (1.0 + 1e-12) &&
            !jsr.finiteness_detected)
            out.uncertain_band.push_back(ev.lambda);
    }
    out.has_error_term = any_below;
    if (!out.uncertain_band.empty())
        out.warnings.push_back(
            "rho is only bracketed: eigenvalue moduli inside (lower, upper] may belong to "
            "either the main terms or the error term");

    CMat C = CMat::Zero(rep.d, rep.d);
    for (const auto& m : rep.matrices) C += to_complex(m);
    auto constants = spectral::eigen_constants(C, to_complex(rep.A(0)), spec);
    out.m_one = constants.m_one;
    CVec v0 = to_complex(rep.v0);
    out.K_v0_norm = inf_norm(CVec(constants.K * v0));
    out.theta_v0_norm = inf_norm(CVec(constants.theta * v0));
    if (out.sequence_mode && (out.K_v0_norm > 1e-8 || out.theta_v0_norm > 1e-8))
        out.warnings.push_back("K v0 or theta v0 does not vanish in sequence mode");

    std::sort(out.terms.begin(), out.terms.end(), [](const Term& a, const Term& b) {
        return std::abs(a.lambda) > std::abs(b.lambda);
    });
    return out;
}

ResidualReport residual_decay_check(const LinearRepresentation& rep,
                                    const ExpansionSkeleton& skel,
                                    const std::vector<fourier::HigherTerm>& tables,
                                    const std::vector<std::uint64_t>& N_grid) {
    ResidualReport report;
    const double log_q = std::log(double(rep.q));
    for (std::uint64_t N : N_grid) {
        if (N < 2) continue;
        QVec V = summatory_fast(rep, N);
        cplx exact = to_complex(dot(rep.e, V));
        double lg = std::log(double(N)) / log_q;
        double u = lg - std::floor(lg);
        cplx recon = 0.0;
        for (const auto& t : tables) {
            cplx phi = t.table->reconstruct(t.lambda, t.k, t.L, u);
            recon += phi * std::exp(std::log(t.lambda) / log_q * std::log(double(N))) *
                     std::pow(lg, double(t.k));
        }
        double resid = std::abs(exact - recon);
        double denom = std::pow(double(N), skel.error_exponent) *
                       std::pow(std::max(lg, 1.0), double(skel.error_log_power));
        report.points.push_back(ResidualPoint{N, resid, resid / denom});
    }
    report.max_normalized = 0.0;
    for (const auto& p : report.points)
        report.max_normalized = std::max(report.max_normalized, p.normalized);

    // envelope over dyadic blocks should not grow
    std::vector<double> block_max;
    std::uint64_t block_lo = N_grid.empty() ? 0 : N_grid.front();
    double cur = 0.0;
    for (const auto& p : report.points) {
        if (p.N >= 2 * block_lo && cur > 0.0) {
            block_max.push_back(cur);
            cur = 0.0;
            block_lo = p.N;
        }
        cur = std::max(cur, p.normalized);
    }
    if (cur > 0.0) block_max.push_back(cur);
    // growth below the roundoff floor of the exact summation is not decay
    for (size_t i = 1; i < block_max.size(); ++i)
        if (block_max[i] > 2.0 * block_max[i - 1] && block_max[i] > 1e-8)
            report.bounded = false;
    return report;
}

}  // namespace regseq::asymptotics
