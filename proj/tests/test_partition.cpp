#include <doctest.h>

#include <cmath>
#include <numbers>

#include "autores/partition.hpp"
#include "autores/phase_equation.hpp"

using namespace autores;
using std::numbers::pi;

namespace {

// Root count from sign changes of P on a dense grid; exact away from tangencies.
int brute_count(const PhaseParams& p) {
    const int n = 20000;
    int count = 0;
    double prev = eval_phase(0.0, p, 0);
    for (int i = 1; i <= n; ++i) {
        const double v = eval_phase(2 * pi * i / n, p, 0);
        if ((prev < 0) != (v < 0)) ++count;
        prev = v;
    }
    return count;
}

} // namespace

TEST_CASE("regimes") {
    CHECK(regime_of(0.4) == Regime::Below34);
    CHECK(regime_of(0.9) == Regime::From34To1);
    CHECK(regime_of(1.0) == Regime::One);
    CHECK(regime_of(1.6) == Regime::Above1);
}

TEST_CASE("special points solve their defining equations") {
    for (double k : {0.4, 0.9, 1.6}) {
        const SpecialPoints sp = special_points(k);
        for (double n : sp.n) {
            const auto [p1, p2] = p_functions(n, k);
            REQUIRE(p1.has_value());
            CHECK(std::abs(*p1) < 1e-9);
        }
        if (k < std::sqrt(3.0) / 2) {
            REQUIRE(sp.delta_star.has_value());
            CHECK(*sp.delta_star == doctest::Approx(-std::sqrt((3 - 4 * k * k) / 12)));
        }
        if (k >= 0.75) {
            REQUIRE(sp.m3.has_value());
            CHECK(*sp.m3 == doctest::Approx(k - 1));
        }
    }
}

TEST_CASE("curve points carry a multiple root") {
    for (double k : {0.4, 1.6}) {
        const auto curves = bifurcation_curves(k, 401);
        REQUIRE(curves.size() >= 2);
        int checked = 0;
        for (const auto& c : curves)
            for (const auto& piece : c.pieces)
                for (std::size_t i = 0; i < piece.size(); i += 37) {
                    const double d = piece[i][0], nu = piece[i][1];
                    if (d == 0.0) continue;
                    // some root with P = P' = 0
                    double best = 1e9;
                    for (int j = 0; j < 40000; ++j) {
                        const double s = 2 * pi * j / 40000;
                        const PhaseParams p{d, nu, k};
                        best = std::min(best, std::abs(eval_phase(s, p, 0)) + std::abs(eval_phase(s, p, 1)));
                    }
                    CHECK(best < 5e-3);
                    ++checked;
                }
        CHECK(checked > 10);
    }
}

TEST_CASE("region labels agree with brute-force root counts") {
    for (double k : {0.4, 0.9, 1.6}) {
        const auto curves = bifurcation_curves(k, 1001);
        for (int i = 0; i < 25; ++i)
            for (int j = 0; j < 12; ++j) {
                const double d = -2.9 + 5.8 * i / 24, nu = pi * (j + 0.5) / 12;
                if (std::abs(d) < 1e-9 || distance_to_curves(curves, d, nu) < 1e-2) continue;
                const PhaseParams p{d, nu, k};
                CHECK(expected_root_count(classify_region(p)) == brute_count(p));
                CHECK(expected_root_count(region_from_curves(p)) == brute_count(p));
            }
    }
}

TEST_CASE("curve crossings bracket root-count changes") {
    const double k = 0.9, nu = pi / 2;
    const auto xs = curve_crossings(bifurcation_curves(k, 2001), nu);
    REQUIRE(!xs.empty());
    for (std::size_t i = 1; i < xs.size(); ++i) CHECK(xs[i - 1].delta < xs[i].delta);
    for (const auto& x : xs) {
        const int left = brute_count({x.delta - 1e-3, nu, k});
        const int right = brute_count({x.delta + 1e-3, nu, k});
        CHECK(left != right);
    }
}

TEST_CASE("multiple-root domain") {
    GridSpec g{-3.0, 3.0, 0.0, 2.0, 61, 21};
    const Mask m = multiple_root_domain(g);
    CHECK(m.rows() == 21);
    CHECK(m.cols() == 61);
    CHECK_FALSE(in_multiple_root_domain(0.0, 0.5));
    CHECK(m.count() > 0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) CHECK(m(j, i) == in_multiple_root_domain(g.x(i), g.y(j)));
}

TEST_CASE("validation at partition entry points") {
    CHECK_THROWS_AS((void)classify_region(PhaseParams{1.0, 0.5, -1.0}), DomainError);
    CHECK_THROWS_AS((void)classify_region(PhaseParams{1.0, 4.0, 1.0}), DomainError);
}
