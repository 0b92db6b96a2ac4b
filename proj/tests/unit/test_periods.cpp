#include <vector>

#include "eulerhom/classify.hpp"
#include "eulerhom/periods.hpp"
#include "helpers.hpp"

using namespace eulerhom;

TEST_CASE("span_hyperbolic examples") {
    SpanResult r = span_hyperbolic(2.0, -3.0, BSign::Zero);
    CHECK(r.T == kPi / 2);
    CHECK(r.method == SpanMethod::ClosedForm);
    r = span_hyperbolic(2.0, -1.0, BSign::Plus);
    CHECK(r.T > kPi / 2);
    CHECK(r.T < kPi);
    CHECK(r.est_error <= 1e-9);
    CHECK(std::fabs(r.T - span_direct(FlowParams(2.0, -1.0, 1.0)).T) < 1e-7);
    r = span_hyperbolic(2.0, -1e-8, BSign::Minus);
    CHECK(r.T < 1e-2);
    CHECK_ERROR(span_hyperbolic(2.0, 1.0, BSign::Plus), DomainError);
    CHECK_ERROR(span_hyperbolic(0.8, -1.0, BSign::Plus), DomainError);
}

TEST_CASE("period_elliptic examples") {
    const double Pm2 = steady_state(2.0, 1.0).P_max;
    for (double f : {1e-6, 0.1, 0.5, 0.9, 1 - 1e-6}) CHECK(std::fabs(period_elliptic(2.0, f * Pm2).T - kPi) <= 1e-8);
    const double Pm5 = steady_state(5.0, 1.0).P_max;
    CHECK(std::fabs(period_elliptic(5.0, Pm5 * (1 - 1e-6)).T - 2 * kPi / std::sqrt(10.0)) <= 1e-3);
    CHECK_ERROR(period_elliptic(5.0, 0.0), DomainError);
    CHECK_ERROR(period_elliptic(5.0, 1.01 * Pm5), DomainError);
}

TEST_CASE("span_any examples") {
    SpanResult r = span_any(FlowParams(0.5, -0.25, -3.0 / 16.0));
    CHECK(std::fabs(r.T - 2 * kPi) <= 1e-7);
    CHECK(r.method == SpanMethod::Conjugacy);
    for (double B : {0.01, 1.0, 100.0}) {
        r = span_any(FlowParams(2.0 / 3.0, 1.0, B));
        CHECK(r.T > 0.0);
        CHECK(r.T < kPi);
    }
    CHECK(span_any(FlowParams(1.0, -2.0, 0.3)).T == kPi);
}

TEST_CASE("limit_values examples") {
    LimitValues v = limit_values(2.0);
    CHECK(v.T_center == doctest::Approx(kPi));
    CHECK(v.T_separatrix == kPi);
    CHECK(v.T_infinity == doctest::Approx(kPi / 2));
    v = limit_values(8.0);
    CHECK(v.T_center == doctest::Approx(kPi / 2));
    CHECK(v.T_infinity == doctest::Approx(kPi / 8));
    CHECK(limit_values(4.5).T_center == doctest::Approx(2 * kPi / 3));
}

TEST_CASE("chicone_W sign certificates") {
    for (double lam : {1.5, 3.0, 5.0}) CHECK(std::fabs(chicone_W(1.0, lam)) < 1e-14);
    const int N = 10000;
    double mn = 1e300, mx = -1e300;
    for (int i = 1; i <= N; ++i) {
        mn = std::min(mn, chicone_W(chicone_W_upper(3.0) * i / (N + 1.0), 3.0));
        mx = std::max(mx, chicone_W(chicone_W_upper(1.5) * i / (N + 1.0), 1.5));
    }
    CHECK(mn >= -1e-12);
    CHECK(mx <= 1e-12);
    CHECK_ERROR(chicone_W(chicone_W_upper(3.0) * 1.01, 3.0), DomainError);
}

TEST_CASE("trend_of") {
    CHECK(trend_of({1, 2, 3}, 0.0) == Trend::StrictlyIncreasing);
    CHECK(trend_of({3, 2, 1}, 0.0) == Trend::StrictlyDecreasing);
    CHECK(trend_of({1, 1 + 1e-12, 1}, 1e-9) == Trend::Constant);
    CHECK(trend_of({1, 3, 2}, 0.0) == Trend::NotMonotone);
}

TEST_CASE("property: monotone periods in the proved ranges") {
    for (double lam : {1.5, 1.8, 2.5, 3.0, 5.0}) {
        const double Pm = steady_state(lam, 1.0).P_max;
        std::vector<double> T;
        for (int i = 0; i < 20; ++i) T.push_back(period_elliptic(lam, Pm * std::pow(10.0, -6.0 * i / 19.0) * (1 - 1e-6)).T);
        // P descending toward the separatrix
        CHECK(trend_of(T, 0.0) == (lam > 2 ? Trend::StrictlyIncreasing : Trend::StrictlyDecreasing));
    }
    for (double lam : {2.0, 3.0}) {
        std::vector<double> Tp, Tm;
        for (int i = 0; i < 20; ++i) {
            const double P = -std::pow(10.0, -4.0 + 8.0 * i / 19.0);
            Tp.push_back(span_hyperbolic(lam, P, BSign::Plus).T);
            Tm.push_back(span_hyperbolic(lam, P, BSign::Minus).T);
        }
        CHECK(trend_of(Tp, 0.0) == Trend::StrictlyDecreasing);
        CHECK(trend_of(Tm, 0.0) == Trend::StrictlyIncreasing);
        CHECK(Tp.back() > kPi / lam);
        CHECK(Tm.back() < kPi / lam);
        CHECK(std::fabs(span_hyperbolic(lam, -1e6, BSign::Plus).T - kPi / lam) <= 1e-3);
    }
}

TEST_CASE("property: conjugacy span identity by independent quadratures") {
    for (double lam : {1.2, 2.0, 3.7, 6.0})
        for (double P : {-5.0, -0.3})
            for (double B : {1.0, -1.0}) {
                const FlowParams p(lam, P, B);
                const FlowParams c = conjugate(p);
                CHECK(std::fabs(span_any(p).T - c.lambda * span_direct(c).T) <= 1e-7);
            }
    for (double lam : {1.2, 3.7, 6.0}) {
        const FlowParams p(lam, 0.4 * steady_state(lam, 1.0).P_max, 1.0);
        const FlowParams c = conjugate(p);
        CHECK(std::fabs(span_any(p).T - c.lambda * span_direct(c).T) <= 1e-7);
    }
}

TEST_CASE("monotonicity_proved ranges") {
    CHECK(monotonicity_proved(1.5));
    CHECK(monotonicity_proved(4.0 / 3.0));
    CHECK_FALSE(monotonicity_proved(1.2));
    CHECK_FALSE(monotonicity_proved(2.0));
}
