#include "regseq/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace regseq::spectral {

namespace {

int numerical_rank(const CMat& m, double threshold) {
    Eigen::JacobiSVD<CMat> svd(m);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > threshold) ++rank;
    return rank;
}

/// Resolvent contour integral (1/2 pi i) oint (sI - C)^{-1} ds on a circle.
CMat resolvent_projector(const CMat& C, cplx center, double radius, int nodes = 256) {
    const int d = int(C.rows());
    CMat acc = CMat::Zero(d, d);
    CMat I = CMat::Identity(d, d);
    for (int j = 0; j < nodes; ++j) {
        double th = 2.0 * std::numbers::pi * j / nodes;
        cplx w = std::polar(1.0, th);
        cplx s = center + radius * w;
        CMat resolvent = (s * I - C).partialPivLu().solve(I);
        acc += w * resolvent;
    }
    return (radius / double(nodes)) * acc;
}

double spectral_radius(const CMat& m) {
    Eigen::ComplexEigenSolver<CMat> es(m, /*computeEigenvectors=*/false);
    double best = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        best = std::max(best, std::abs(es.eigenvalues()(i)));
    return best;
}

}  // namespace

SpectralReport spectrum(const CMat& C, double tol) {
    const int d = int(C.rows());
    SpectralReport report;
    report.d = d;
    report.tol = tol;

    Eigen::ComplexEigenSolver<CMat> es(C, /*computeEigenvectors=*/false);
    std::vector<cplx> evs(es.eigenvalues().data(), es.eigenvalues().data() + d);

    double scale = 0.0;
    for (cplx v : evs) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    const double eps = tol * scale;

    // Single-linkage clustering at distance tol * scale.
    std::vector<int> cluster(d, -1);
    int nclusters = 0;
    for (int i = 0; i < d; ++i) {
        if (cluster[i] >= 0) continue;
        cluster[i] = nclusters;
        // grow transitively
        bool changed = true;
        while (changed) {
            changed = false;
            for (int a = 0; a < d; ++a) {
                if (cluster[a] != nclusters) continue;
                for (int b = 0; b < d; ++b) {
                    if (cluster[b] < 0 && std::abs(evs[a] - evs[b]) <= eps) {
                        cluster[b] = nclusters;
                        changed = true;
                    }
                }
            }
        }
        ++nclusters;
    }

    std::vector<cplx> center(nclusters, 0.0);
    std::vector<int> count(nclusters, 0);
    std::vector<double> spread(nclusters, 0.0);
    for (int i = 0; i < d; ++i) {
        center[cluster[i]] += evs[i];
        ++count[cluster[i]];
    }
    for (int c = 0; c < nclusters; ++c) center[c] /= double(count[c]);
    for (int i = 0; i < d; ++i)
        spread[cluster[i]] = std::max(spread[cluster[i]], std::abs(evs[i] - center[cluster[i]]));

    // Each cluster needs a separating circle of radius > 10 tol.
    std::vector<double> radius(nclusters, 0.0);
    for (int c = 0; c < nclusters; ++c) {
        double min_dist = std::numeric_limits<double>::infinity();
        for (int o = 0; o < nclusters; ++o)
            if (o != c) min_dist = std::min(min_dist, std::abs(center[c] - center[o]));
        if (nclusters == 1) {
            radius[c] = spread[c] + std::max(1.0, scale);
        } else {
            radius[c] = 0.5 * min_dist;
            if (radius[c] <= 10.0 * eps || radius[c] <= spread[c])
                throw IllSeparatedSpectrum("ill-separated spectrum: clusters near " +
                                           std::to_string(center[c].real()) + "+" +
                                           std::to_string(center[c].imag()) + "i");
        }
    }

    CMat I = CMat::Identity(d, d);
    for (int c = 0; c < nclusters; ++c) {
        EigenvalueInfo info;
        info.lambda = center[c];
        info.multiplicity = count[c];

        // Rank chain of (C - lambda I)^k stabilises exactly at k = m(lambda).
        CMat B = C - center[c] * I;
        double sigma1 = B.jacobiSvd().singularValues().size() > 0
                            ? B.jacobiSvd().singularValues()(0)
                            : 0.0;
        CMat P = B;
        int prev = numerical_rank(P, 1e-8 * std::max(sigma1, 0.0));
        int m = 1;
        for (; m <= d; ++m) {
            CMat Pn = P * B;
            double thresh = 1e-8 * std::max(std::pow(sigma1, m + 1),
                                            Pn.jacobiSvd().singularValues()(0));
            int next = numerical_rank(Pn, thresh);
            if (next == prev) break;
            prev = next;
            P = Pn;
        }
        info.jordan_max = std::min(m, d);

        info.projector = (nclusters == 1) ? I : resolvent_projector(C, center[c], radius[c]);
        report.eigenvalues.push_back(std::move(info));
    }

    std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
              [](const EigenvalueInfo& a, const EigenvalueInfo& b) {
                  if (std::abs(a.lambda) != std::abs(b.lambda))
                      return std::abs(a.lambda) > std::abs(b.lambda);
                  return a.lambda.real() > b.lambda.real();
              });

    cplx tr = 0.0, det = 1.0;
    for (const auto& ev : report.eigenvalues) {
        tr += ev.lambda * double(ev.multiplicity);
        for (int i = 0; i < ev.multiplicity; ++i) det *= ev.lambda;
    }
    report.trace_error = std::abs(tr - C.trace()) / std::max(1.0, std::abs(C.trace()));
    report.det_error =
        std::abs(det - C.determinant()) / std::max(1.0, std::abs(C.determinant()));
    return report;
}

JsrEstimate jsr_bounds(const std::vector<CMat>& matrices, int max_len, std::uint64_t budget) {
    if (matrices.empty()) throw std::invalid_argument("jsr_bounds: no matrices");
    const int q = int(matrices.size());
    const int d = int(matrices[0].rows());

    JsrEstimate est;
    est.rho_ell.assign(max_len, 0.0);

    double lower = 0.0;
    // |lambda(C)| <= q * rho gives a cheap lower bound.
    CMat Csum = CMat::Zero(d, d);
    for (const auto& m : matrices) Csum += m;
    lower = std::max(lower, spectral_radius(Csum) / double(q));

    std::uint64_t used = 0;
    bool exhausted = false;

    // Depth-first enumeration of digit products with shared prefixes.
    // Spectral radii are only extracted on cheap levels; deeper levels use
    // |trace|/d which still bounds rho(P) from below.
    std::vector<CMat> stack;
    stack.reserve(max_len + 1);
    stack.push_back(CMat::Identity(d, d));

    struct Frame {
        int next_digit = 0;
    };
    std::vector<Frame> frames(1);
    while (!frames.empty()) {
        int depth = int(frames.size()) - 1;
        if (depth == max_len || frames.back().next_digit == q) {
            frames.pop_back();
            stack.pop_back();
            continue;
        }
        int r = frames.back().next_digit++;
        if (used >= budget) {
            exhausted = true;
            break;
        }
        ++used;
        CMat prod = matrices[r] * stack.back();
        int len = depth + 1;
        double nrm = row_sum_norm(prod);
        est.rho_ell[len - 1] = std::max(est.rho_ell[len - 1], std::pow(nrm, 1.0 / len));
        double tr_bound = std::abs(prod.trace()) / double(d);
        if (tr_bound > 0) lower = std::max(lower, std::pow(tr_bound, 1.0 / len));
        bool cheap_level = std::pow(double(q), len) <= 1024.0;
        if (cheap_level) {
            double sr = spectral_radius(prod);
            if (sr > 0) lower = std::max(lower, std::pow(sr, 1.0 / len));
        }
        stack.push_back(std::move(prod));
        frames.push_back(Frame{});
    }
    est.budget_exhausted = exhausted;

    double upper = std::numeric_limits<double>::infinity();
    for (int l = 1; l <= max_len; ++l)
        if (est.rho_ell[l - 1] > 0) upper = std::min(upper, est.rho_ell[l - 1]);
    est.upper = upper;
    est.lower = std::min(lower, upper);  // clamp against norm rounding
    est.finiteness_detected = (upper - est.lower) <= 1e-9 * upper;
    return est;
}

double choose_R(JsrEstimate& jsr, const SpectralReport& spec, double eps) {
    if (jsr.finiteness_detected) {
        jsr.R = jsr.upper;
        jsr.R_is_exact = true;
        return jsr.R;
    }
    double candidate = jsr.upper * (1.0 + eps);
    double nearest_above = std::numeric_limits<double>::infinity();
    for (const auto& ev : spec.eigenvalues) {
        double m = std::abs(ev.lambda);
        if (m > jsr.upper * (1.0 + 1e-12)) nearest_above = std::min(nearest_above, m);
    }
    if (nearest_above <= candidate) candidate = 0.5 * (jsr.upper + nearest_above);
    jsr.R = candidate;
    jsr.R_is_exact = false;
    return candidate;
}

EigenConstants eigen_constants(const CMat& C, const CMat& A0, const SpectralReport& spec) {
    const int d = int(C.rows());
    CMat I = CMat::Identity(d, d);
    EigenConstants out;
    out.pi_one = CMat::Zero(d, d);

    double scale = 0.0;
    for (const auto& ev : spec.eigenvalues) scale = std::max(scale, std::abs(ev.lambda));
    if (scale == 0.0) scale = 1.0;

    const EigenvalueInfo* one = nullptr;
    for (const auto& ev : spec.eigenvalues)
        if (std::abs(ev.lambda - 1.0) <= spec.tol * scale) one = &ev;

    if (one == nullptr) {
        out.one_in_spectrum = false;
        out.m_one = 0;
        out.K = (I - C).partialPivLu().solve(I - A0);
        out.theta = CMat::Zero(d, d);
        return out;
    }
    out.one_in_spectrum = true;
    out.m_one = one->jordan_max;
    out.pi_one = one->projector;
    CMat P = I - one->projector;        // acts as D in the eigenbasis
    CMat Cprime = C * P;                // 1 is no longer an eigenvalue
    out.K = P * (I - Cprime).partialPivLu().solve(I - A0);
    CMat power = I;
    for (int i = 0; i < out.m_one - 1; ++i) power = power * (C - I);
    double factorial = 1.0;
    for (int i = 2; i <= out.m_one; ++i) factorial *= i;
    out.theta = (1.0 / factorial) * one->projector * power * (I - A0);
    return out;
}

CMat theta_m(const CMat& C, const CMat& A0, const SpectralReport& spec, int m) {
    const int d = int(C.rows());
    CMat I = CMat::Identity(d, d);
    double scale = 0.0;
    for (const auto& ev : spec.eigenvalues) scale = std::max(scale, std::abs(ev.lambda));
    if (scale == 0.0) scale = 1.0;
    bool one_in = false;
    CMat pi = CMat::Zero(d, d);
    for (const auto& ev : spec.eigenvalues)
        if (std::abs(ev.lambda - 1.0) <= spec.tol * scale) {
            one_in = true;
            pi = ev.projector;
        }
    if (m == 0) {
        if (one_in) throw std::domain_error("theta_0 is undefined while 1 is an eigenvalue");
        return CMat::Zero(d, d);  // I - D vanishes when 1 is not an eigenvalue
    }
    if (!one_in) return CMat::Zero(d, d);
    CMat power = I;
    for (int i = 0; i < m - 1; ++i) power = power * (C - I);
    double factorial = 1.0;
    for (int i = 2; i <= m; ++i) factorial *= i;
    return (1.0 / factorial) * pi * power * (I - A0);
}

}  // namespace regseq::spectral
