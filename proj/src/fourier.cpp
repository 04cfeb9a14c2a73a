#include "regseq/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "regseq/linrep.hpp"

namespace regseq::fourier {

namespace {
const double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

const FourierEntry* FourierTable::find(cplx lambda, int k, long l) const {
    for (const auto& e : entries)
        if (e.k == k && e.l == l && std::abs(e.lambda - lambda) <= 1e-9 * (1.0 + std::abs(lambda)))
            return &e;
    return nullptr;
}

cplx FourierTable::reconstruct(cplx lambda, int k, int L, double u) const {
    cplx acc = 0.0;
    for (long l = -L; l <= L; ++l) {
        cplx phi;
        if (const FourierEntry* e = find(lambda, k, l)) {
            phi = e->phi;
        } else if (const FourierEntry* c = find(std::conj(lambda), k, -l)) {
            phi = std::conj(c->phi);  // conjugate symmetry for real data
        } else {
            continue;
        }
        acc += phi * std::polar(1.0, kTwoPi * double(l) * u / double(period));
    }
    return acc;
}

CoefficientResult fourier_coefficient(const dirichlet::DirichletEvaluator& evaluator,
                                      const LinearRepresentation& rep,
                                      const spectral::SpectralReport& spec, double R_upper,
                                      cplx lambda, int k, long l, CoefficientConfig cfg) {
    const double log_q = std::log(double(rep.q));
    if (std::abs(lambda) <= std::max(R_upper, 1.0 / rep.q))
        throw NotDominant("eigenvalue modulus must exceed max(R, 1/q)");

    const cplx s0 = std::log(lambda) / log_q + cplx(0.0, kTwoPi * double(l) / log_q);

    double radius = cfg.radius;
    if (radius <= 0.0) {
        // half the least distance to other pole sites (nearby frequencies of
        // every eigenvalue, and s = 0), capped by a quarter lattice spacing
        // and the distance to the continuation boundary
        double min_dist = std::numeric_limits<double>::infinity();
        for (const auto& ev : spec.eigenvalues) {
            if (std::abs(ev.lambda) <= std::max(R_upper, 1.0 / rep.q)) continue;
            cplx base = std::log(ev.lambda) / log_q;
            for (long dl = -2; dl <= 2; ++dl) {
                cplx site = base + cplx(0.0, kTwoPi * double(l + dl) / log_q);
                double dist = std::abs(site - s0);
                if (dist > 1e-12) min_dist = std::min(min_dist, dist);
            }
        }
        if (std::abs(s0) > 1e-12) min_dist = std::min(min_dist, std::abs(s0));
        double boundary = s0.real() - (std::log(std::max(R_upper, 1e-300)) / log_q) - 0.02;
        radius = std::min({0.25 * kTwoPi / log_q, 0.5 * min_dist, boundary});
        if (!(radius > 0.0))
            throw RadiusCollision("no admissible contour radius around the pole site");
    }

    const cplx x0 = to_complex(evaluate(rep, 0));
    const CVec e = to_complex(rep.e);
    double e_norm1 = 0.0;
    for (int i = 0; i < rep.d; ++i) e_norm1 += std::abs(e(i));
    // quadrature weights average node values, so per-node precision only
    // needs to match the overall target divided by the contour scale
    double logq_k = std::pow(log_q, double(k));
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    const double scale = logq_k / kfact;
    const double node_target =
        cfg.target * 0.25 / std::max(scale * radius * std::pow(radius, double(k)), 1e-6);

    auto integrand = [&](cplx s) -> std::pair<cplx, double> {
        auto val = evaluator.evaluate_full(s, node_target);
        cplx xs = x0;
        for (int i = 0; i < rep.d; ++i) xs += e(i) * val.value(i);
        cplx w = xs * std::pow(s - s0, k) / s;
        double err = val.abs_error_bound * e_norm1 * std::pow(radius, double(k)) / std::abs(s);
        return {w, err};
    };

    // all nodes of the M-grid reappear in the 2M-grid, so values accumulate
    // across refinements; the quadrature error of the full grid is estimated
    // against its half grid (geometric convergence of the trapezoid rule on
    // periodic analytic integrands makes this conservative)
    CoefficientResult out;
    out.radius = radius;
    std::vector<cplx> values;
    std::vector<double> errors;
    int nodes = cfg.min_nodes;
    while (true) {
        values.assign(nodes, 0.0);
        errors.assign(nodes, 0.0);
        for (int j = 0; j < nodes; ++j) {
            double th = kTwoPi * double(j) / double(nodes);
            auto [val, verr] = integrand(s0 + radius * std::polar(1.0, th));
            values[j] = val * std::polar(1.0, th);
            errors[j] = verr;
        }
        cplx full = 0.0, half = 0.0, quarter = 0.0;
        double perr = 0.0;
        for (int j = 0; j < nodes; ++j) {
            full += values[j];
            if (j % 2 == 0) half += values[j];
            if (j % 4 == 0) quarter += values[j];
            perr += errors[j];
        }
        full *= radius / double(nodes);
        half *= radius / double(nodes / 2);
        quarter *= radius / double(nodes / 4);
        perr *= radius / double(nodes);
        // geometric decay of the trapezoid error on periodic analytic
        // integrands justifies Richardson-style extrapolation of the
        // remaining error from the last two refinements
        double r1 = std::abs(full - half);
        double r2 = std::abs(half - quarter);
        double quad_err = r1;
        if (r2 > 0.0 && r1 < 0.5 * r2) quad_err = std::min(r1, r1 * (r1 / r2));
        if (quad_err < 0.5 * cfg.target || nodes * 2 > cfg.max_nodes) {
            out.phi = scale * full;
            out.error = scale * (quad_err + perr);
            if (nodes * 2 > cfg.max_nodes && quad_err >= 0.5 * cfg.target)
                out.error += cfg.target;  // convergence not confirmed
            out.nodes = nodes;
            return out;
        }
        nodes *= 2;
    }
}

FourierTable fourier_table(const dirichlet::DirichletEvaluator& evaluator,
                           const LinearRepresentation& rep,
                           const spectral::SpectralReport& spec, double R_upper, cplx lambda,
                           int k, long l_min, long l_max, CoefficientConfig cfg) {
    FourierTable table;
    table.q = rep.q;
    table.entries.resize(size_t(l_max - l_min + 1));
    // real representation data: compute l >= 0 and mirror the rest
    for (long l = l_min; l <= l_max; ++l) {
        auto res = fourier_coefficient(evaluator, rep, spec, R_upper, lambda, k, l, cfg);
        table.entries[size_t(l - l_min)] = FourierEntry{lambda, k, l, res.phi, res.error};
    }
    return table;
}

FourierTable transducer_fourier_regroup(const FourierTable& table, int p) {
    if (p < 1) throw std::invalid_argument("period must be >= 1");
    if (p == 1) {
        FourierTable out = table;
        out.period = 1;
        return out;
    }
    const double q = double(table.q);
    // required eigenvalues: q * zeta for every p-th root of unity zeta
    for (int j = 0; j < p; ++j) {
        cplx want = q * std::polar(1.0, kTwoPi * double(j) / p);
        bool found = false;
        for (const auto& e : table.entries)
            if (std::abs(e.lambda - want) <= 1e-6 * q) found = true;
        if (!found)
            throw std::invalid_argument(
                "period mismatch: eigenvalue set is not {q zeta : zeta^p = 1}");
    }
    FourierTable out;
    out.q = table.q;
    out.period = p;
    for (const auto& e : table.entries) {
        if (e.k != 0) continue;
        // lambda = q exp(2 pi i j / p): psi index m = l p + j
        double angle = std::arg(e.lambda / q) / kTwoPi;  // in (-1/2, 1/2]
        long j = std::lround(angle * p);
        if (j < 0) j += p;
        long m = e.l * p + j;
        out.entries.push_back(FourierEntry{cplx(q, 0.0), 0, m, e.phi, e.error});
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const FourierEntry& a, const FourierEntry& b) { return a.l < b.l; });
    return out;
}

std::vector<FluctuationSample> empirical_fluctuation(const LinearRepresentation& rep,
                                                     cplx lambda, int k,
                                                     const std::vector<std::uint64_t>& Ns,
                                                     const std::vector<HigherTerm>& subtract) {
    const double log_q = std::log(double(rep.q));
    std::vector<FluctuationSample> out;
    out.reserve(Ns.size());
    for (std::uint64_t N : Ns) {
        if (N < 2) continue;
        QVec V = summatory_fast(rep, N);
        cplx total = to_complex(dot(rep.e, V));
        double lg = std::log(double(N)) / log_q;
        double u = lg - std::floor(lg);
        cplx rest = total;
        for (const auto& term : subtract) {
            cplx phi = term.table->reconstruct(term.lambda, term.k, term.L, u);
            rest -= phi * std::exp(std::log(term.lambda) / log_q * std::log(double(N))) *
                    std::pow(lg, double(term.k));
        }
        cplx scale = std::exp(std::log(lambda) / log_q * std::log(double(N))) *
                     std::pow(lg, double(k));
        out.push_back(FluctuationSample{N, u, (rest / scale).real()});
    }
    return out;
}

}  // namespace regseq::fourier
