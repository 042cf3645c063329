#include "autores/phase_equation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

namespace autores {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Zeros of P⁽ᵏ⁾ are located by recursive monotone segmentation: between two consecutive
// zeros of P⁽ᵏ⁺¹⁾ the function P⁽ᵏ⁾ is monotone, so each arc holds at most one sign change.
// Critical values within tol_root of zero are kept as tangential zeros, which a sign scan
// alone would miss. The deepest level (P⁗) is bracketed by a uniform scan.
class RootFinder {
public:
    RootFinder(const PhaseParams& p, const RootOptions& o) : p_(p), o_(o) {}

    std::vector<PhaseRoot> run() const {
        std::vector<PhaseRoot> roots;
        for (double s : zeros(0)) {
            if (auto r = classify(s)) roots.push_back(*r);
        }
        std::sort(roots.begin(), roots.end(),
                  [](const PhaseRoot& a, const PhaseRoot& b) { return a.sigma < b.sigma; });
        return dedupe(std::move(roots));
    }

private:
    double f(int k, double s) const { return eval_phase(s, p_, k); }

    std::vector<double> zeros(int k) const {
        std::vector<double> breaks;
        if (k < 4) breaks = zeros(k + 1);
        if (breaks.size() < 2) {
            breaks.clear();
            for (int i = 0; i < o_.scan_intervals; ++i)
                breaks.push_back(kTwoPi * i / o_.scan_intervals);
        }
        std::vector<double> out;
        const std::size_t m = breaks.size();
        const std::vector<double> values = uniform(k, breaks);
        for (std::size_t i = 0; i < m; ++i) {
            const double a = breaks[i];
            const double b = i + 1 < m ? breaks[i + 1] : breaks[0] + kTwoPi;
            const double fa = values.empty() ? f(k, a) : values[i];
            const double fb = values.empty() ? f(k, b) : values[(i + 1) % m];
            if (std::abs(fa) <= o_.tol_root) out.push_back(a);
            if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0))
                out.push_back(wrap_angle(bisect(k, a, b, fa)));
        }
        return merge(k, std::move(out));
    }

    // P⁽ᵏ⁾ on the uniform scan grid from tabulated sin/cos of σᵢ and 2σᵢ; empty for other breaks.
    std::vector<double> uniform(int k, const std::vector<double>& breaks) const {
        const auto n = static_cast<std::size_t>(o_.scan_intervals);
        if (breaks.size() != n || breaks.size() < 2 || breaks[1] != kTwoPi * 1 / o_.scan_intervals) return {};
        static const GridTable shared(4096);
        const GridTable local = n == shared.s1.size() ? GridTable(0) : GridTable(n);
        const GridTable& t = n == shared.s1.size() ? shared : local;
        const double cn = std::cos(p_.nu), sn = std::sin(p_.nu), scale = p_.delta * double(1 << k);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double s2 = t.s2[i] * cn + t.c2[i] * sn, c2 = t.c2[i] * cn - t.s2[i] * sn;
            v[i] = scale * detail::sin_derivative(s2, c2, k) - detail::sin_derivative(t.s1[i], t.c1[i], k);
            if (k == 0) v[i] += p_.kappa;
        }
        return v;
    }

    struct GridTable {
        std::vector<double> s1, c1, s2, c2;
        explicit GridTable(std::size_t n) : s1(n), c1(n), s2(n), c2(n) {
            for (std::size_t i = 0; i < n; ++i) {
                const double x = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
                s1[i] = std::sin(x);
                c1[i] = std::cos(x);
                s2[i] = std::sin(2 * x);
                c2[i] = std::cos(2 * x);
            }
        }
    };

    double bisect(int k, double a, double b, double fa) const {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (b - a <= 1e-13 || mid <= a || mid >= b) {
                return std::abs(f(k, a)) <= std::abs(f(k, b)) ? a : b;
            }
            const double fm = f(k, mid);
            if (fm == 0.0) return mid;
            if ((fm < 0.0) == (fa < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        throw NumericalError("bisection did not converge for derivative order " + std::to_string(k),
                             a, b);
    }

    // Merges zeros closer than merge_distance (cyclically), keeping the smallest |P⁽ᵏ⁾|.
    std::vector<double> merge(int k, std::vector<double> z) const {
        if (z.empty()) return z;
        std::sort(z.begin(), z.end());
        std::vector<double> out{z.front()};
        for (std::size_t i = 1; i < z.size(); ++i) {
            if (z[i] - out.back() < o_.merge_distance) {
                if (std::abs(f(k, z[i])) < std::abs(f(k, out.back()))) out.back() = z[i];
            } else {
                out.push_back(z[i]);
            }
        }
        if (out.size() > 1 && out.front() + kTwoPi - out.back() < o_.merge_distance) {
            if (std::abs(f(k, out.back())) < std::abs(f(k, out.front()))) out.front() = out.back();
            out.pop_back();
        }
        return out;
    }

    // Newton on P⁽ᵏ⁾ with P⁽ᵏ⁺¹⁾; falls back to the start point if it wanders off.
    double polish(int k, double s0) const {
        double s = s0;
        for (int it = 0; it < 60; ++it) {
            const double d = f(k + 1, s);
            if (d == 0.0) break;
            const double step = f(k, s) / d;
            s -= step;
            if (!std::isfinite(s) || std::abs(s - s0) > 1e-3) return s0;
            if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(s)))
                break;
        }
        return std::abs(f(k, s)) <= std::abs(f(k, s0)) ? s : s0;
    }

    std::optional<PhaseRoot> classify(double s0) const {
        const auto d0 = eval_phase_all(s0, p_);
        int m_sep = 1;
        while (m_sep <= 4 && std::abs(d0[m_sep]) <= o_.tol_sep) ++m_sep;
        if (m_sep > 4)
            throw NumericalError("no derivative of order <= 4 separates the root", s0, s0);
        // Highest multiplicity consistent with tol_root after polishing wins.
        for (int m = m_sep; m >= 1; --m) {
            const double s = wrap_angle(polish(m - 1, s0));
            const auto d = eval_phase_all(s, p_);
            bool ok = true;
            for (int j = 0; j < m; ++j) ok = ok && std::abs(d[j]) <= o_.tol_root;
            if (ok) {
                PhaseRoot r;
                r.sigma = s;
                r.multiplicity = m;
                r.derivs = d;
                r.well_separated = std::abs(d[m]) > o_.tol_sep;
                return r;
            }
        }
        return std::nullopt;
    }

    std::vector<PhaseRoot> dedupe(std::vector<PhaseRoot> r) const {
        std::vector<PhaseRoot> out;
        for (auto& x : r) {
            if (!out.empty() && x.sigma - out.back().sigma < o_.merge_distance) {
                if (x.multiplicity > out.back().multiplicity) out.back() = x;
                continue;
            }
            out.push_back(x);
        }
        if (out.size() > 1 && out.front().sigma + kTwoPi - out.back().sigma < o_.merge_distance) {
            if (out.back().multiplicity > out.front().multiplicity) out.front() = out.back();
            out.pop_back();
            std::sort(out.begin(), out.end(),
                      [](const PhaseRoot& a, const PhaseRoot& b) { return a.sigma < b.sigma; });
        }
        return out;
    }

    const PhaseParams& p_;
    const RootOptions& o_;
};

} // namespace

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

double angle_diff(double a, double b) {
    double d = std::remainder(a - b, kTwoPi);
    if (d <= -std::numbers::pi) d += kTwoPi;
    return d;
}

void validate(const PhaseParams& p) {
    if (!(p.kappa > 0.0)) throw DomainError("kappa must be positive");
    if (!(p.nu >= 0.0 && p.nu < std::numbers::pi)) throw DomainError("nu must lie in [0, pi)");
    if (!std::isfinite(p.delta)) throw DomainError("delta must be finite");
}

std::vector<PhaseRoot> find_roots(const PhaseParams& p, const RootOptions& opt) {
    if (!(opt.tol_root > 0.0) || !(opt.tol_sep > 0.0) || !(opt.tol_root < opt.tol_sep))
        throw DomainError("require 0 < tol_root < tol_sep");
    if (opt.scan_intervals < 8) throw DomainError("scan_intervals must be at least 8");
    if (!std::isfinite(p.delta) || !std::isfinite(p.nu) || !std::isfinite(p.kappa))
        throw DomainError("phase parameters must be finite");
    return RootFinder(p, opt).run();
}

} // namespace autores
