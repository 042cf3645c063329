#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "autores/asymptotics.hpp"
#include "autores/stability.hpp"

using namespace autores;
using std::numbers::pi;

namespace {

struct Fixture {
    PhaseParams phase{-2.0, 5 * pi / 6, 1.0};
    ModelParams params = ModelParams::from_phase(phase, 1.0);
    std::vector<PhaseRoot> roots = find_roots(phase);

    [[nodiscard]] const PhaseRoot& near(double sigma) const {
        for (const auto& r : roots)
            if (std::abs(angle_diff(r.sigma, sigma)) < 1e-6) return r;
        throw std::runtime_error("root not found");
    }
    [[nodiscard]] SeriesSolution series(const PhaseRoot& r) const {
        return std::get<SeriesSolution>(build_series(params, r, 3));
    }
};

} // namespace

TEST_CASE("rational formatting") {
    CHECK(Rational{3, 4}.str() == "3/4");
    CHECK(Rational{0, 1}.str() == "0");
    CHECK(Rational{1, 2}.value() == 0.5);
}

TEST_CASE("linearization matches a finite-difference Jacobian") {
    const Fixture f;
    const double rho = 6.1, psi = 2.9, tau = 37.0, h = 1e-6;
    const Eigen::Matrix2d J = linearization_matrix(f.params, rho, psi, tau);
    for (int j = 0; j < 2; ++j) {
        Eigen::Vector2d e = Eigen::Vector2d::Zero();
        e[j] = h;
        const Eigen::Vector2d y(rho, psi);
        const Eigen::Vector2d col = (polar_rhs(f.params, tau, y + e) - polar_rhs(f.params, tau, y - e)) / (2 * h);
        CHECK(J(0, j) == doctest::Approx(col[0]).epsilon(1e-7));
        CHECK(J(1, j) == doctest::Approx(col[1]).epsilon(1e-7));
    }
}

TEST_CASE("simple roots: verdict follows the slope of P") {
    const Fixture f;
    int stable = 0, unstable = 0;
    for (const auto& r : f.roots) {
        const auto s = f.series(r);
        const StabilityVerdict v = classify_stability(r, s, f.params);
        CHECK(v.kind == SeriesCase::Simple);
        CHECK(v.exponent_model.power == Rational{1, 2});
        if (r.derivs[1] > 0) {
            ++stable;
            CHECK(v.status == StabilityStatus::Stable);
            CHECK(v.branch == "simple.positive_slope");
            CHECK(v.exponent_model.kind == ExponentKind::Oscillatory);
            CHECK(v.exponent_model.coefficient == doctest::Approx(std::sqrt(2.0) * std::sqrt(r.derivs[1])));
        } else {
            ++unstable;
            CHECK(v.status == StabilityStatus::Unstable);
            CHECK(v.branch == "simple.negative_slope");
            CHECK(v.exponent_model.kind == ExponentKind::RealSaddle);
        }
        // leading exponent magnitude against the model at large tau
        const auto [zp, zm] = linearization_exponents(r, s, f.params, 1e6);
        CHECK(std::abs(zp) / (v.exponent_model.coefficient * 1e3) == doctest::Approx(1.0).epsilon(1e-2));
        CHECK(std::abs(zm) / (v.exponent_model.coefficient * 1e3) == doctest::Approx(1.0).epsilon(1e-2));
    }
    CHECK(stable == 2);
    CHECK(unstable == 2);
}

TEST_CASE("mismatched series is a contract violation") {
    const Fixture f;
    const auto s = f.series(f.near(pi));
    const PhaseRoot& other = f.roots.front().sigma == s.sigma ? f.roots.back() : f.roots.front();
    CHECK_THROWS_AS((void)classify_stability(other, s, f.params), ContractError);
    ModelParams shifted = f.params;
    shifted.lambda = 2.0;
    CHECK_THROWS_AS((void)classify_stability(f.near(pi), s, shifted), ContractError);
}

TEST_CASE("double-root weights and branch codes") {
    const PhaseParams ph{-0.6, pi / 2, 0.4};
    const ModelParams m = ModelParams::from_phase(ph, 1.0);
    RootOptions o;
    o.tol_root = 1e-6;
    int seen = 0;
    for (const auto& r : find_roots(ph, o)) {
        if (r.multiplicity != 2) continue;
        for (const auto& s : series_branches(m, r, 3)) {
            const StabilityVerdict v = classify_stability(r, s, m);
            if (v.status != StabilityStatus::Unstable) {
                CHECK(v.w1 == Rational{3, 4});
                CHECK(v.w2 == Rational{1, 2});
            }
            CHECK(v.exponent_model.power == Rational{1, 4});
            const bool aligned = s.psi_k(1) * r.derivs[2] > 0;
            CHECK(v.branch == (aligned ? "double.aligned" : "double.opposed"));
            CHECK((v.status == StabilityStatus::StableWeighted) == aligned);
            ++seen;
        }
    }
    CHECK(seen == 2);
}

TEST_CASE("Hamiltonian vanishes to second order at the anchor") {
    const Fixture f;
    const double rs = 8.0, ps = 3.1, tau = 64.0;
    CHECK(hamiltonian(f.params, rs, ps, 0.0, 0.0, tau) == 0.0);
    const double a = hamiltonian(f.params, rs, ps, 1e-3, 2e-3, tau) / 1e-6;
    const double b = hamiltonian(f.params, rs, ps, 1e-4, 2e-4, tau) / 1e-8;
    CHECK(a == doctest::Approx(b).epsilon(2e-3));
}

TEST_CASE("Lyapunov function is sandwiched by W in the validity ball") {
    const Fixture f;
    const PhaseRoot& r = f.near(pi);
    const auto s = f.series(r);
    const LyapunovFrame fr = make_frame(classify_stability(r, s, f.params), s, f.params);
    CHECK(fr.omega_sq == doctest::Approx(r.derivs[1]));
    std::mt19937_64 g(3);
    std::uniform_real_distribution<double> u(-0.14, 0.14);
    for (int i = 0; i < 500; ++i) {
        const double x = u(g), y = u(g);
        const double ratio = lyapunov_scaled(fr, x, y, 1000.0) / fr.W(x, y);
        CHECK(ratio > 0.5);
        CHECK(ratio < 1.5);
    }
    CHECK_THROWS_AS((void)lyapunov_scaled(fr, 0.3, 0.0, 1000.0), DomainError);
}

TEST_CASE("perturbations follow the verdict at the black parameters") {
    const Fixture f;
    for (const auto& r : f.roots) {
        const auto s = f.series(r);
        const StabilityVerdict v = classify_stability(r, s, f.params);
        const PerturbationResponse pr = perturbation_response(v, s, f.params);
        CHECK(pr.agrees());
    }
}

TEST_CASE("Lyapunov decrease along a perturbed stable run") {
    const Fixture f;
    const PhaseRoot& r = f.near(pi);
    const auto s = f.series(r);
    const SeriesPoint sp = evaluate_series(s, 20.0);
    IntegratorOptions o;
    o.mode = CoordinateMode::Cartesian;
    o.rtol = 1e-12;
    o.atol = 1e-14;
    o.samples = 8001;
    const Trajectory ref = integrate(f.params, sp.rho, sp.psi, 20.0, 90.0, o);
    const Eigen::Vector2d y = ref.at(50.0);
    const Trajectory pert = integrate(f.params, y[0] + 1e-3, y[1] + 1e-3, 50.0, 90.0, o);
    LyapunovFrame fr = make_frame(classify_stability(r, s, f.params), s, f.params);
    fr.anchor = [ref](double t) { return ref.at(t); };
    const DecreaseReport rep = verify_decrease(fr, pert, 0.5);
    CHECK(rep.checked > 100);
    CHECK(rep.pass());
    CHECK(rep.gamma_kappa == doctest::Approx(1.0 / 3.0));  // gamma0 (1 - k) / (1 + k)
}
