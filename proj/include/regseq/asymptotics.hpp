#pragma once

// Expansion skeleton of the summatory function: eigenvalue terms above the
// JSR threshold, constant and log-power contributions, and the error
// exponent; plus an empirical residual-decay check.

#include <string>
#include <vector>

#include "regseq/fourier.hpp"
#include "regseq/spectral.hpp"

namespace regseq::asymptotics {

struct Term {
    cplx lambda;
    cplx exponent;        // log_q lambda
    int max_log_power;    // powers (log_q N)^k for 0 <= k < m(lambda)
    double holder_bound;  // log_q(|lambda|/R)
};

struct ExpansionSkeleton {
    std::vector<Term> terms;  // sorted by decreasing |lambda|
    bool has_error_term = true;
    double error_exponent = 0.0;  // log_q R
    int error_log_power = 0;      // max m(lambda) on |lambda| = R
    std::vector<cplx> boundary_eigenvalues;  // folded into the error term
    std::vector<cplx> uncertain_band;        // moduli inside (lower, upper]: flagged
    bool sequence_mode = true;
    double K_v0_norm = 0.0;      // sequence mode: should vanish
    double theta_v0_norm = 0.0;  // sequence mode: should vanish
    int m_one = 0;
    std::vector<std::string> warnings;
};

ExpansionSkeleton skeleton(const LinearRepresentation& rep,
                           const spectral::SpectralReport& spec,
                           const spectral::JsrEstimate& jsr);

struct ResidualPoint {
    std::uint64_t N = 0;
    double residual = 0.0;    // |X(N) - reconstruction|
    double normalized = 0.0;  // residual / N^{error exponent + eps log power}
};

struct ResidualReport {
    std::vector<ResidualPoint> points;
    double max_normalized = 0.0;
    bool bounded = true;  // non-increasing envelope across dyadic blocks
};

/// Compares exact X(N) against the skeleton reconstruction built from the
/// given Fourier tables (one table per kept eigenvalue term and power).
ResidualReport residual_decay_check(const LinearRepresentation& rep,
                                    const ExpansionSkeleton& skel,
                                    const std::vector<fourier::HigherTerm>& tables,
                                    const std::vector<std::uint64_t>& N_grid);

}  // namespace regseq::asymptotics
