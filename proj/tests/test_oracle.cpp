#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include <etdms/field.hpp>
#include <etdms/grid.hpp>
#include <etdms/nss.hpp>
#include <etdms/operators.hpp>
#include <etdms/oracle.hpp>

using etdms::cplx;
using etdms::PeriodicGrid;
using etdms::SpectralField;
using etdms::oracle::cvec;
using etdms::oracle::OdeProblem;

TEST_CASE("reference integrator nails scalar exponential decay") {
    OdeProblem prob;
    prob.rhs = [](double, const cvec& y, cvec& dy) { dy[0] = -y[0]; };
    prob.y0 = {cplx(1.0, 0.0)};
    prob.t0 = 0.0;
    prob.t1 = 1.0;
    const auto res = etdms::oracle::solve_reference(prob);
    CHECK(std::abs(res.y[0] - std::exp(-1.0)) <= 1e-11);
    CHECK(res.n_steps > 0);
    CHECK(std::isfinite(res.err_est));
}

TEST_CASE("reference integrator holds phase on pure rotation") {
    const double two_pi = 2.0 * 3.14159265358979323846;
    OdeProblem prob;
    prob.rhs = [](double, const cvec& y, cvec& dy) { dy[0] = cplx(0.0, 1.0) * y[0]; };
    prob.y0 = {cplx(1.0, 0.0)};
    prob.t1 = two_pi;
    const auto res = etdms::oracle::solve_reference(prob);
    CHECK(std::abs(res.y[0] - cplx(1.0, 0.0)) <= 1e-9);
    CHECK(std::abs(std::abs(res.y[0]) - 1.0) <= 1e-10);
}

TEST_CASE("forced linear mode matches the Duhamel closed form") {
    // y' = -a y + cos t => y(t) = e^{-at} (y0 + Re[(e^{(a+i)t} - 1)/(a+i)])
    const double a = 2.0, t1 = 1.5, y0 = 0.7;
    OdeProblem prob;
    prob.rhs = [a](double t, const cvec& y, cvec& dy) { dy[0] = -a * y[0] + std::cos(t); };
    prob.y0 = {cplx(y0, 0.0)};
    prob.t1 = t1;
    const auto res = etdms::oracle::solve_reference(prob);

    const cplx ez = std::exp(cplx(a, 1.0) * t1);
    const double exact = std::exp(-a * t1) * (y0 + ((ez - 1.0) / cplx(a, 1.0)).real());
    CHECK(std::abs(res.y[0] - exact) <= 1e-11);
}

TEST_CASE("tolerances control the achieved error") {
    auto run = [](double rtol) {
        OdeProblem prob;
        prob.rhs = [](double t, const cvec& y, cvec& dy) { dy[0] = -y[0] + std::sin(3.0 * t); };
        prob.y0 = {cplx(1.0, 0.0)};
        prob.t1 = 2.0;
        prob.rtol = rtol;
        prob.atol = rtol * 1e-2;
        return etdms::oracle::solve_reference(prob);
    };
    // exact: e^{-t} + int_0^t e^{-(t-s)} sin 3s ds, Im[(e^{(1+3i)t}-1)/(1+3i)] form
    const cplx den(1.0, 3.0);
    const double exact =
        std::exp(-2.0) * (1.0 + ((std::exp(den * 2.0) - 1.0) / den).imag());
    const auto loose = run(1e-6);
    const auto tight = run(1e-12);
    CHECK(std::abs(loose.y[0] - exact) <= 1e-4);
    CHECK(std::abs(tight.y[0] - exact) <= 1e-10);
    CHECK(tight.n_steps > loose.n_steps);
}

TEST_CASE("thin-film flow integrated as a raw coefficient ODE") {
    const PeriodicGrid g(8, 2.0 * 3.14159265358979323846);
    const double eps = 0.1;
    SpectralField u0 = etdms::benchmark_profile(g);
    u0 *= 0.5;
    const etdms::NssParams params{eps, &g};

    OdeProblem prob;
    prob.rhs = [&](double, const cvec& y, cvec& dy) {
        SpectralField u(g);
        u.c = y;
        const SpectralField f = etdms::nonlinear_term(u, params);
        for (int ix = 0; ix < g.n; ++ix)
            for (int iy = 0; iy < g.n; ++iy) {
                const std::size_t i = static_cast<std::size_t>(ix) * g.n + iy;
                dy[i] = -eps * g.lam(ix, iy) * y[i] + f.c[i];
            }
    };
    prob.y0 = u0.c;
    prob.t1 = 0.3;
    prob.rtol = 1e-10;
    prob.atol = 1e-12;
    const auto res = etdms::oracle::solve_reference(prob);

    SpectralField u1(g);
    u1.c = res.y;
    CHECK(etdms::energy(u1, params) < etdms::energy(u0, params));  // free-energy descent
    CHECK(res.y[0] == u0.c[0]);                                    // mean bitwise conserved
    CHECK(etdms::hermitian_defect(u1) <= 1e-8);

    // self-consistency across tolerances
    OdeProblem loose = prob;
    loose.rtol = 1e-8;
    loose.atol = 1e-10;
    const auto res2 = etdms::oracle::solve_reference(loose);
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < res.y.size(); ++i) {
        diff += std::norm(res.y[i] - res2.y[i]);
        norm += std::norm(res.y[i]);
    }
    CHECK(std::sqrt(diff / norm) <= 1e-7);
}

TEST_CASE("direct Vandermonde solve on the unit-step window") {
    const auto xi = etdms::oracle::vandermonde_lagrange({0.0, -1.0});
    REQUIRE(xi.size() == 2);
    CHECK(xi[0][0] == Catch::Approx(1.0).margin(1e-14));
    CHECK(xi[0][1] == Catch::Approx(1.0).margin(1e-14));
    CHECK(xi[1][0] == Catch::Approx(0.0).margin(1e-14));
    CHECK(xi[1][1] == Catch::Approx(-1.0).margin(1e-14));
}

TEST_CASE("Vandermonde solve scales like the coefficient degree") {
    const std::vector<double> base = {0.0, -1.0, -2.2};
    const auto xi = etdms::oracle::vandermonde_lagrange(base);
    for (double c : {0.31, 2.7}) {
        std::vector<double> scaled = base;
        for (double& s : scaled) s *= c;
        const auto xic = etdms::oracle::vandermonde_lagrange(scaled);
        double cj = 1.0;
        for (int j = 0; j < 3; ++j) {
            for (int i = 0; i < 3; ++i)
                CHECK(xic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * cj ==
                      Catch::Approx(xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                          .margin(1e-12));
            cj *= c;
        }
    }
}

TEST_CASE("Vandermonde solve rejects degenerate node sets") {
    CHECK_THROWS_AS(etdms::oracle::vandermonde_lagrange({}), std::invalid_argument);
    CHECK_THROWS_AS(etdms::oracle::vandermonde_lagrange({0.0, -1.0, -1.0}), std::invalid_argument);
}
