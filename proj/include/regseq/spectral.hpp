#pragma once

// Spectrum and Jordan structure of C = sum_r A_r, joint-spectral-radius
// bounds, the threshold R, spectral projectors and the constants K and
// theta_m.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "regseq/numeric.hpp"

namespace regseq::spectral {

struct EigenvalueInfo {
    cplx lambda;       // cluster representative
    int multiplicity;  // algebraic (cluster size)
    int jordan_max;    // m(lambda): size of the largest Jordan block
    CMat projector;    // spectral projector onto the generalized eigenspace
};

struct SpectralReport {
    std::vector<EigenvalueInfo> eigenvalues;  // sorted by decreasing |lambda|
    int d = 0;
    double tol = 1e-8;
    double trace_error = 0.0;  // relative defect of trace(C) = sum lambda*mult
    double det_error = 0.0;    // relative defect of det(C) = prod lambda^mult
};

struct IllSeparatedSpectrum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Eigenvalues clustered at relative tolerance tol. m(lambda) is the
/// smallest k with rank((C - lambda I)^k) = rank((C - lambda I)^{k+1});
/// projectors are resolvent contour integrals on separating circles.
SpectralReport spectrum(const CMat& C, double tol = 1e-8);

struct JsrEstimate {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<double> rho_ell;  // rho_ell[l-1] = sup norm(product)^{1/l}, l = 1..L
    bool finiteness_detected = false;
    bool budget_exhausted = false;
    double R = 0.0;       // filled by choose_R
    bool R_is_exact = false;  // true when R = rho via the finiteness property
};

/// Norm bounds on the joint spectral radius: upper = min_l rho_l (valid by
/// Fekete subadditivity), lower from spectral radii of enumerated products.
JsrEstimate jsr_bounds(const std::vector<CMat>& matrices, int max_len = 8,
                       std::uint64_t budget = 1'000'000);

/// Choose R: equal to the upper bound under detected finiteness, otherwise
/// slightly above it while keeping no eigenvalue modulus inside (upper, R].
double choose_R(JsrEstimate& jsr, const SpectralReport& spec, double eps = 1e-6);

struct EigenConstants {
    CMat K;
    CMat theta;  // theta_{m(1)}
    int m_one = 0;
    bool one_in_spectrum = false;
    CMat pi_one;  // projector of the eigenvalue 1 (zero matrix if absent)
};

EigenConstants eigen_constants(const CMat& C, const CMat& A0, const SpectralReport& spec);

/// theta_m = (1/m!) Pi_1 (C-I)^{m-1} (I-A_0); zero when 1 is not an
/// eigenvalue. Refuses m = 0 while 1 is in the spectrum.
CMat theta_m(const CMat& C, const CMat& A0, const SpectralReport& spec, int m);

}  // namespace regseq::spectral
