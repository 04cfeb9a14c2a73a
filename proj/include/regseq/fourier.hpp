#pragma once

// Fourier coefficients of the periodic fluctuations, extracted as residues
// of the continued Dirichlet series by contour quadrature, plus
// trigonometric-polynomial reconstruction and empirical sampling.

#include <cstdint>
#include <optional>
#include <vector>

#include "regseq/dirichlet.hpp"
#include "regseq/spectral.hpp"

namespace regseq::fourier {

struct FourierEntry {
    cplx lambda;
    int k = 0;   // log-power index, 0 <= k < m(lambda)
    long l = 0;  // frequency index
    cplx phi;
    double error = 0.0;
};

struct FourierTable {
    int q = 2;
    int period = 1;  // frequencies are l/period cycles per unit of log_q N
    std::vector<FourierEntry> entries;

    const FourierEntry* find(cplx lambda, int k, long l) const;
    /// Degree-L trigonometric polynomial; missing negative frequencies are
    /// filled by conjugate symmetry (valid for real representation data).
    cplx reconstruct(cplx lambda, int k, int L, double u) const;
};

struct CoefficientConfig {
    double target = 1e-8;
    int min_nodes = 64;
    int max_nodes = 1 << 14;
    double radius = 0.0;  // 0 = automatic from pole-site distances
};

struct CoefficientResult {
    cplx phi;
    double error = 0.0;
    int nodes = 0;
    double radius = 0.0;
};

struct NotDominant : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RadiusCollision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// phi_{lambda k l} = (log q)^k / k! * (1/2 pi i) oint (x(0)+X(s))
/// (s - s_l)^k / s ds on a circle around s_l = log_q(lambda) + 2 pi i l/log q.
/// The quadrature handles pole order up to m(lambda) (plus one when s_l = 0)
/// without derivative formulas.
CoefficientResult fourier_coefficient(const dirichlet::DirichletEvaluator& evaluator,
                                      const LinearRepresentation& rep,
                                      const spectral::SpectralReport& spec, double R_upper,
                                      cplx lambda, int k, long l,
                                      CoefficientConfig cfg = {});

/// Coefficients for l in [l_min, l_max], assembled deterministically
/// (parallel over l; REGSEQ_THREADS caps the worker count).
FourierTable fourier_table(const dirichlet::DirichletEvaluator& evaluator,
                           const LinearRepresentation& rep,
                           const spectral::SpectralReport& spec, double R_upper, cplx lambda,
                           int k, long l_min, long l_max, CoefficientConfig cfg = {});

/// Regroups coefficients of the eigenvalues q*zeta (zeta running over the
/// p-th roots of unity, k = 0) into the Fourier table of the p-periodic
/// fluctuation: psi_m = phi_{(q zeta_j) l} with m = l p + j.
FourierTable transducer_fourier_regroup(const FourierTable& table, int p);

struct HigherTerm {
    cplx lambda;
    int k = 0;
    const FourierTable* table = nullptr;
    int L = 0;
};

struct FluctuationSample {
    std::uint64_t N = 0;
    double u = 0.0;  // frac(log_q N)
    double value = 0.0;
};

/// y(N) = Re(X(N) - higher terms) / (N^{log_q lambda} (log_q N)^k) sampled
/// at the given N; X(N) is computed exactly by the fast summatory recursion.
std::vector<FluctuationSample> empirical_fluctuation(const LinearRepresentation& rep,
                                                     cplx lambda, int k,
                                                     const std::vector<std::uint64_t>& Ns,
                                                     const std::vector<HigherTerm>& subtract);

}  // namespace regseq::fourier
