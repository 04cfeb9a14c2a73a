#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "regseq/examples.hpp"
#include "regseq/fourier.hpp"
#include "regseq/pascal.hpp"
#include "regseq/pascal_system.hpp"
#include "regseq/spectral.hpp"
#include "regseq/transducer.hpp"

using namespace regseq;
using namespace regseq::fourier;

namespace {

struct Setup {
    LinearRepresentation rep;
    spectral::SpectralReport spec;
    spectral::JsrEstimate jsr;
    std::unique_ptr<dirichlet::DirichletEvaluator> ev;
};

Setup make_setup(const std::string& name, double target = 1e-12) {
    Setup s{examples::by_name(name), {}, {}, nullptr};
    std::vector<CMat> mats;
    CMat C = CMat::Zero(s.rep.d, s.rep.d);
    for (const auto& m : s.rep.matrices) {
        mats.push_back(to_complex(m));
        C += mats.back();
    }
    s.spec = spectral::spectrum(C);
    s.jsr = spectral::jsr_bounds(mats, 8);
    spectral::choose_R(s.jsr, s.spec);
    dirichlet::EvaluatorConfig cfg;
    cfg.target_abs_error = target;
    s.ev = std::make_unique<dirichlet::DirichletEvaluator>(
        s.rep, std::log(s.jsr.upper) / std::log(double(s.rep.q)), cfg);
    return s;
}

}  // namespace

TEST_CASE("Delange: phi_{2,1,0} = 1/2 for the binary sum of digits") {
    auto s = make_setup("binary-sum-of-digits");
    CoefficientConfig cfg;
    cfg.target = 1e-11;
    auto res = fourier_coefficient(*s.ev, s.rep, s.spec, s.jsr.upper, cplx(2.0, 0.0), 1, 0, cfg);
    CHECK(std::abs(res.phi - 0.5) < 1e-10);
    MESSAGE("phi_210 = ", res.phi.real(), " err est ", res.error);
}

TEST_CASE("constant-one representation: phi_{2,0,0} = 1 and no other mass") {
    // X(N) = N exactly, so Phi_{2,0} == 1 and phi_l = 0 for l != 0
    auto s = make_setup("constant-one");
    CoefficientConfig cfg;
    cfg.target = 1e-10;
    auto res0 = fourier_coefficient(*s.ev, s.rep, s.spec, s.jsr.upper, cplx(2.0, 0.0), 0, 0, cfg);
    CHECK(std::abs(res0.phi - 1.0) < 1e-9);
    auto res1 = fourier_coefficient(*s.ev, s.rep, s.spec, s.jsr.upper, cplx(2.0, 0.0), 0, 1, cfg);
    CHECK(std::abs(res1.phi) < 1e-9);
}

TEST_CASE("radius independence") {
    auto s = make_setup("binary-sum-of-digits");
    CoefficientConfig a, b;
    a.target = b.target = 1e-10;
    auto r1 = fourier_coefficient(*s.ev, s.rep, s.spec, s.jsr.upper, cplx(2.0, 0.0), 1, 0, a);
    b.radius = r1.radius / 2.0;
    auto r2 = fourier_coefficient(*s.ev, s.rep, s.spec, s.jsr.upper, cplx(2.0, 0.0), 1, 0, b);
    CHECK(std::abs(r1.phi - r2.phi) <= 2 * (r1.error + r2.error) + 1e-12);
}

TEST_CASE("not-dominant eigenvalues are rejected") {
    auto s = make_setup("binary-sum-of-digits");
    CHECK_THROWS_AS(
        fourier_coefficient(*s.ev, s.rep, s.spec, s.jsr.upper, cplx(1.0, 0.0), 0, 0, {}),
        NotDominant);
}

TEST_CASE("contour method agrees with the Pascal Cramer fast path") {
    auto s = make_setup("pascal-rhombus", 1e-12);
    pascal_system::PascalEvaluator fast;
    cplx lambda1((3.0 + std::sqrt(17.0)) / 2.0, 0.0);
    CoefficientConfig cfg;
    cfg.target = 1e-9;
    for (long l : {0L, 1L, 3L}) {
        auto contour =
            fourier_coefficient(*s.ev, s.rep, s.spec, s.jsr.upper, lambda1, 0, l, cfg);
        auto cramer = fast.fourier_coefficient(l);
        CHECK(std::abs(contour.phi - cramer.phi) <=
              contour.error + cramer.error + 1e-9);
    }
}

TEST_CASE("reconstruction basics") {
    FourierTable t;
    t.q = 2;
    t.entries.push_back(FourierEntry{cplx(2, 0), 0, 0, cplx(0.75, 0.0), 0.0});
    t.entries.push_back(FourierEntry{cplx(2, 0), 0, 1, cplx(0.1, 0.05), 0.0});
    // L = 0: constant
    CHECK(t.reconstruct(cplx(2, 0), 0, 0, 0.37) == cplx(0.75, 0.0));
    // 1-periodicity
    cplx a = t.reconstruct(cplx(2, 0), 0, 1, 0.2);
    cplx b = t.reconstruct(cplx(2, 0), 0, 1, 1.2);
    CHECK(std::abs(a - b) < 1e-12);
    // conjugate fill gives a real value
    CHECK(std::abs(a.imag()) < 1e-12);
}

TEST_CASE("mean consistency: phi_0 equals the grid average of the reconstruction") {
    auto table = pascal_system::fourier_table(8, 1e-10);
    cplx lambda1((3.0 + std::sqrt(17.0)) / 2.0, 0.0);
    cplx mean = 0.0;
    const int grid = 1024;
    for (int i = 0; i < grid; ++i)
        mean += table.reconstruct(lambda1, 0, 8, double(i) / grid);
    mean /= double(grid);
    const FourierEntry* e0 = table.find(lambda1, 0, 0);
    REQUIRE(e0 != nullptr);
    CHECK(std::abs(mean - e0->phi) < 1e-8);
}

TEST_CASE("Parseval sanity: coefficient mass below the sup of the reconstruction") {
    auto table = pascal_system::fourier_table(10, 1e-10);
    cplx lambda1((3.0 + std::sqrt(17.0)) / 2.0, 0.0);
    double sup = 0.0;
    for (int i = 0; i < 512; ++i)
        sup = std::max(sup, std::abs(table.reconstruct(lambda1, 0, 10, i / 512.0)));
    double mass_prev = 0.0;
    for (int L = 0; L <= 10; ++L) {
        double mass = 0.0;
        for (const auto& e : table.entries)
            if (e.l <= L) mass += std::norm(e.phi) * (e.l == 0 ? 1.0 : 2.0);
        CHECK(mass >= mass_prev - 1e-15);
        CHECK(mass <= sup * sup + 1e-6);
        mass_prev = mass;
    }
}

TEST_CASE("empirical fluctuation: constant-one gives exactly 1") {
    auto rep = examples::constant_one();
    auto samples = empirical_fluctuation(rep, cplx(2.0, 0.0), 0,
                                         {16, 100, 1000, 65536}, {});
    for (const auto& s : samples) CHECK(s.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empirical fluctuation: sum-of-digits minus main term stays bounded") {
    auto rep = examples::binary_sum_of_digits();
    // Phi_21 is the constant 1/2; subtract it and look at the k=0 fluctuation
    FourierTable main_term;
    main_term.q = 2;
    main_term.entries.push_back(FourierEntry{cplx(2, 0), 1, 0, cplx(0.5, 0.0), 0.0});
    std::vector<HigherTerm> subtract{HigherTerm{cplx(2, 0), 1, &main_term, 0}};
    std::vector<std::uint64_t> Ns;
    for (int j = 10; j <= 18; ++j)
        for (int m = 0; m < 4; ++m)
            Ns.push_back(std::uint64_t(std::pow(2.0, j + 0.25 * m)));
    auto samples = empirical_fluctuation(rep, cplx(2.0, 0.0), 0, Ns, subtract);
    for (const auto& s : samples) {
        CHECK(std::abs(s.value) < 1.0);  // Phi_20 is bounded
    }
}

TEST_CASE("transducer regrouping") {
    SUBCASE("p = 1 leaves the table unchanged") {
        FourierTable t;
        t.q = 2;
        t.entries.push_back(FourierEntry{cplx(2, 0), 0, 0, cplx(0.25, 0), 1e-9});
        auto out = transducer_fourier_regroup(t, 1);
        REQUIRE(out.entries.size() == 1);
        CHECK(out.entries[0].phi == t.entries[0].phi);
        CHECK(out.period == 1);
    }
    SUBCASE("p = 2 interleaves the two eigenvalue lattices") {
        FourierTable t;
        t.q = 2;
        // entries for lambda = 2 (j = 0) and lambda = -2 (j = 1)
        t.entries.push_back(FourierEntry{cplx(2, 0), 0, 0, cplx(1.0, 0), 0});
        t.entries.push_back(FourierEntry{cplx(2, 0), 0, 1, cplx(2.0, 0), 0});
        t.entries.push_back(FourierEntry{cplx(-2, 0), 0, 0, cplx(3.0, 0), 0});
        t.entries.push_back(FourierEntry{cplx(-2, 0), 0, 1, cplx(4.0, 0), 0});
        auto out = transducer_fourier_regroup(t, 2);
        CHECK(out.period == 2);
        REQUIRE(out.entries.size() == 4);
        // m = l*2 + j: (1.0 -> m=0), (3.0 -> m=1), (2.0 -> m=2), (4.0 -> m=3)
        CHECK(out.entries[0].phi == cplx(1.0, 0));
        CHECK(out.entries[1].phi == cplx(3.0, 0));
        CHECK(out.entries[2].phi == cplx(2.0, 0));
        CHECK(out.entries[3].phi == cplx(4.0, 0));
        CHECK(out.entries[1].l == 1);
    }
    SUBCASE("period mismatch is reported") {
        FourierTable t;
        t.q = 2;
        t.entries.push_back(FourierEntry{cplx(2, 0), 0, 0, cplx(1.0, 0), 0});
        CHECK_THROWS(transducer_fourier_regroup(t, 2));
    }
}

TEST_CASE("identity-transducer regrouped mean matches the direct residue") {
    // For the identity transducer (sum of digits), the embedded rep has the
    // same fluctuation; p = 1, and psi_0 relates to the k=0 mean.
    auto t = transducer::identity_transducer();
    auto rep = transducer::to_linear_representation(t);
    std::vector<CMat> mats;
    CMat C = CMat::Zero(rep.d, rep.d);
    for (const auto& m : rep.matrices) {
        mats.push_back(to_complex(m));
        C += mats.back();
    }
    auto spec = spectral::spectrum(C);
    auto jsr = spectral::jsr_bounds(mats, 8);
    spectral::choose_R(jsr, spec);
    dirichlet::EvaluatorConfig cfg;
    cfg.target_abs_error = 1e-12;
    dirichlet::DirichletEvaluator ev(rep, std::log(jsr.upper) / std::log(2.0), cfg);

    // direct residue from the 2-dim representation
    auto s2 = make_setup("binary-sum-of-digits");
    CoefficientConfig fc;
    fc.target = 1e-10;
    auto a = fourier_coefficient(ev, rep, spec, jsr.upper, cplx(2.0, 0.0), 0, 0, fc);
    auto b = fourier_coefficient(*s2.ev, s2.rep, s2.spec, s2.jsr.upper, cplx(2.0, 0.0), 0, 0, fc);
    CHECK(std::abs(a.phi - b.phi) <= a.error + b.error + 1e-9);
}
