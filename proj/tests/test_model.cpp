#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "seihrd/errors.hpp"
#include "seihrd/model.hpp"

using namespace seihrd;

namespace {

const Model& china() {
    static const Model model(ModelParameters::china());
    return model;
}

}  // namespace

TEST_CASE("day_index anchors calendar dates to t0") {
    const auto p = ModelParameters::china();
    CHECK(day_index(parse_date("2019-12-01"), p) == 0);
    CHECK(day_index(parse_date("2020-01-23"), p) == 53);
    CHECK(day_index(parse_date("2020-02-08"), p) == 69);
    CHECK(day_index(parse_date("2020-03-29"), p) == 119);
    CHECK_THROWS_AS(day_index(parse_date("2019-11-30"), p), std::out_of_range);
    CHECK_THROWS_AS(day_index(parse_date("2020-03-30"), p), std::out_of_range);
}

TEST_CASE("parse_date rejects malformed input") {
    CHECK_THROWS_AS(parse_date("2020-02-30"), ParameterError);
    CHECK_THROWS_AS(parse_date("2020/02/01"), ParameterError);
    CHECK_THROWS_AS(parse_date("2020-2-1"), ParameterError);
    CHECK(format_date(parse_date("2020-02-08")) == "2020-02-08");
}

TEST_CASE("model anchors") {
    CHECK(china().lambda1() == 53.0);
    CHECK(china().lambda2() == 69.0);
    CHECK(china().horizon() == 119.0);
}

TEST_CASE("control measure") {
    CHECK(china().control_measure(40) == 1.0);
    CHECK(china().control_measure(53) == 1.0);
    CHECK(china().control_measure(69) == doctest::Approx(0.17707179627164651).epsilon(1e-12));
}

TEST_CASE("detection fraction is a ramp between lambda1 and lambda2") {
    CHECK(china().detection_fraction(40) == 0.14);
    CHECK(china().detection_fraction(69) == 0.65);
    CHECK(china().detection_fraction(61) == doctest::Approx(0.395).epsilon(1e-14));
    CHECK(china().detection_fraction(119) == 0.65);
}

TEST_CASE("fatality rate") {
    CHECK(china().fatality_rate(10) == doctest::Approx(0.0363).epsilon(1e-14));
    CHECK(china().fatality_rate(69) == doctest::Approx(0.01934767900319592).epsilon(1e-12));
    // m -> 0 far after lambda1
    auto p = ModelParameters::china();
    p.kappa1 = 0.2;
    p.T = parse_date("2025-01-01");
    CHECK(Model(p).fatality_rate(1500) == doctest::Approx(0.0157).epsilon(1e-12));
}

TEST_CASE("transition rates") {
    const auto r0 = china().transition_rates(20);
    CHECK(r0.gamma_E == doctest::Approx(1.0 / 5.5));
    CHECK(r0.gamma_I == doctest::Approx(0.149254).epsilon(1e-5));
    CHECK(r0.gamma_Iu == doctest::Approx(0.136986).epsilon(1e-5));
    CHECK(r0.gamma_HR == r0.gamma_Iu);
    CHECK(r0.gamma_HD == doctest::Approx(1.0 / 14.3));
    CHECK(china().transition_rates(100).gamma_E == r0.gamma_E);

    // m = 0 limit (g = d_g = 6)
    auto p = ModelParameters::china();
    p.kappa1 = 0.2;
    p.T = parse_date("2025-01-01");
    const auto r = Model(p).transition_rates(1500);
    CHECK(r.gamma_I == doctest::Approx(1.0 / 0.7).epsilon(1e-10));
    CHECK(r.gamma_HD == doctest::Approx(1.0 / 20.3).epsilon(1e-10));
}

TEST_CASE("contact scalers") {
    const auto a = china().contact_scalers(10);
    CHECK(a.A_E == 0.3643);
    CHECK(a.A_Iu == doctest::Approx(0.9355439452111652).epsilon(1e-12));
    CHECK(a.A_HR == a.A_HD);

    // Independent route: the hospital contact factor C_H written with the
    // individual contact rates beta_E, beta_Iu (not the A scalers).
    const double beta_i = 0.2887, theta = 0.14, omega = 0.0363, alpha = 0.0275;
    const double g_e = 1 / 5.5, g_i = 1 / 6.7, g_iu = 1 / 7.3, g_hr = 1 / 7.3, g_hd = 1 / 14.3;
    const double beta_e = 0.3643 * beta_i;
    const double beta_low = 0.4010 * beta_i;
    const double beta_iu = beta_low + (beta_i - beta_low) / (1 - omega) * (1 - theta);
    const double c_h = alpha * (beta_i / g_i + beta_e / g_e + (1 - theta) * beta_iu / g_iu) /
                       ((1 - alpha) * beta_i * theta * ((1 - omega / theta) / g_hr + (omega / theta) / g_hd));
    CHECK(a.A_HR == doctest::Approx(c_h).epsilon(1e-12));
    CHECK(a.A_HR == doctest::Approx(0.3230177417746605).epsilon(1e-12));
}

TEST_CASE("contact scalers guard degenerate detection") {
    const auto p = ModelParameters::china();
    const TransitionRates r{0.18, 0.15, 0.14, 0.14, 0.07};
    CHECK_THROWS_AS(contact_scalers(0.0, 0.0, r, p), ParameterError);
    CHECK_THROWS_AS(contact_scalers(0.5, 1.0, r, p), ParameterError);
    CHECK_NOTHROW(contact_scalers(0.5, 0.01, r, p));
}

TEST_CASE("infectious pressure") {
    StateVector y;
    y[S] = 1000;
    CHECK(china().infectious_pressure(y, 10) == 0.0);
    y[E] = 1;
    CHECK(china().infectious_pressure(y, 10) == doctest::Approx(0.3643));

    StateVector z;
    z[E] = 3;
    z[I] = 5;
    z[Iu] = 7;
    z[HR] = 11;
    z[HD] = 13;
    StateVector z3 = z;
    for (auto c : {E, I, Iu, HR, HD}) z3[c] *= 3.0;
    CHECK(china().infectious_pressure(z3, 60) == doctest::Approx(3.0 * china().infectious_pressure(z, 60)));
}

TEST_CASE("vector field") {
    const double n = 1400812636.0;
    StateVector dfe;
    dfe[S] = n;
    for (double v : china().vector_field(dfe, 30, 0.2887).values) CHECK(v == 0.0);

    StateVector y = china().initial_state();
    const StateVector dy = china().vector_field(y, 0, 0.2887);
    CHECK(dy[S] == doctest::Approx(-0.10517340992491972).epsilon(1e-12));
    CHECK(dy[E] == doctest::Approx(-0.0766447718932621).epsilon(1e-12));
}

TEST_CASE("vector field conserves the population (property)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        StateVector y;
        double scale = 0.0;
        for (auto& v : y.values) {
            v = 1e6 * u(rng);
            scale += std::abs(v);
        }
        const double t = 119.0 * u(rng);
        const double beta = u(rng);
        const StateVector dy = china().vector_field(y, t, beta);
        double sum = 0.0, mag = 0.0;
        for (double v : dy.values) {
            sum += v;
            mag += std::abs(v);
        }
        CHECK(std::abs(sum) <= 1e-13 * mag + 1e-300);
        CHECK(dy[Rd] >= 0.0);
        CHECK(dy[Ru] >= 0.0);
        CHECK(dy[D] >= 0.0);
    }
}

TEST_CASE("coefficient snapshot ranges hold on random times (property)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 119.0);
    const auto& p = china().params();
    for (int k = 0; k < 10000; ++k) {
        const double t = u(rng);
        const auto c = china().coefficients(t);
        CHECK(c.m > 0.0);
        CHECK(c.m <= 1.0);
        CHECK(c.omega < c.theta);
        CHECK(c.omega >= p.omega_low - 1e-15);
        CHECK(c.omega <= p.omega_high() + 1e-15);
        for (double g : {c.gamma_E, c.gamma_I, c.gamma_Iu, c.gamma_HR, c.gamma_HD}) {
            CHECK(g > 0.0);
            CHECK(std::isfinite(g));
        }
        CHECK(c.A_E >= 0.0);
        CHECK(c.A_Iu >= p.C_u);
        CHECK(c.A_Iu <= 1.0);
        CHECK(c.A_HR >= 0.0);
        CHECK(c.A_HR == c.A_HD);
    }
}

TEST_CASE("coefficients are monotone and continuous at the breakpoints") {
    double prev_m = 2.0, prev_theta = -1.0, prev_omega = 2.0;
    for (double t = 0.0; t <= 119.0; t += 0.05) {
        const auto c = china().coefficients(t);
        CHECK(c.m <= prev_m);
        CHECK(c.theta >= prev_theta);
        CHECK(c.omega <= prev_omega + 1e-16);
        prev_m = c.m;
        prev_theta = c.theta;
        prev_omega = c.omega;
    }
    const double eps = 1e-7;
    for (double t : {53.0, 69.0}) {
        const auto lo = china().coefficients(t - eps);
        const auto hi = china().coefficients(t + eps);
        CHECK(std::abs(lo.m - hi.m) < 10 * eps);
        CHECK(std::abs(lo.theta - hi.theta) < 10 * eps);
        CHECK(std::abs(lo.omega - hi.omega) < 10 * eps);
        CHECK(std::abs(lo.gamma_I - hi.gamma_I) < 10 * eps);
        CHECK(std::abs(lo.A_HR - hi.A_HR) < 10 * eps);
    }
}

TEST_CASE("parameter validation names the violated constraint") {
    auto p = ModelParameters::china();
    CHECK_NOTHROW(p.validate());

    auto bad = p;
    bad.d_g = 6.7;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("gamma_I"), ParameterError);

    bad = p;
    bad.kappa1 = 0.25;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("kappa1"), ParameterError);

    bad = p;
    bad.lambda2 = bad.lambda1;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("lambda2"), ParameterError);

    bad = p;
    bad.delta_omega = 0.2;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("theta_low"), ParameterError);

    CHECK_THROWS_AS(Model{bad}, ParameterError);
}
