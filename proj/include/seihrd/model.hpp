#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>

namespace seihrd {

using Date = std::chrono::year_month_day;

/// Parses an ISO-8601 calendar date (YYYY-MM-DD). Throws ParameterError.
Date parse_date(std::string_view text);
std::string format_date(Date d);

/// Fixed and calibrated coefficients of the theta-SEIHRD model.
/// Rates are per day, durations in days, fractions in [0,1].
struct ModelParameters {
    double N = 0.0;
    Date t0{}, lambda1{}, lambda2{}, T{};
    double theta_low = 0.0;
    double theta_high = 0.0;
    double alpha_H = 0.0;
    double d_E = 0.0;
    double d_I = 0.0;
    double d_Iu = 0.0;
    double d_g = 0.0;
    double delta_R = 0.0;
    double C_o = 0.0;
    double p = 0.0;
    double beta_I = 0.0;
    double C_E = 0.0;
    double C_u = 0.0;
    double delta_omega = 0.0;
    double omega_low = 0.0;
    double kappa1 = 0.0;

    double omega_high() const { return omega_low + delta_omega; }

    /// Throws ParameterError naming the first violated constraint.
    void validate() const;

    /// China, 2019-12-01 .. 2020-03-29.
    static ModelParameters china();

    bool operator==(const ModelParameters&) const = default;
};

/// Whole days from t0 to `date`. Throws std::out_of_range outside [t0, T].
int day_index(Date date, const ModelParameters& params);

enum Compartment : std::size_t { S, E, I, Iu, HR, HD, Rd, Ru, D };
inline constexpr std::size_t kCompartments = 9;

std::string_view compartment_name(Compartment c);

/// Persons per compartment.
struct StateVector {
    std::array<double, kCompartments> values{};

    double& operator[](Compartment c) { return values[c]; }
    double operator[](Compartment c) const { return values[c]; }

    double total() const;
    bool operator==(const StateVector&) const = default;
};

struct CoefficientSnapshot {
    double m = 0.0;
    double theta = 0.0;
    double omega = 0.0;
    double gamma_E = 0.0;
    double gamma_I = 0.0;
    double gamma_Iu = 0.0;
    double gamma_HR = 0.0;
    double gamma_HD = 0.0;
    double A_E = 0.0;
    double A_Iu = 0.0;
    double A_HR = 0.0;
    double A_HD = 0.0;
};

struct TransitionRates {
    double gamma_E, gamma_I, gamma_Iu, gamma_HR, gamma_HD;
};

struct ContactScalers {
    double A_E, A_Iu, A_HR, A_HD;
};

/// Contact scalers from already evaluated coefficients. Throws ParameterError
/// when theta <= 0, omega >= 1 or alpha_H >= 1.
ContactScalers contact_scalers(double theta, double omega, const TransitionRates& rates,
                               const ModelParameters& params);

/// Validated parameter set with calendar anchors resolved to day offsets.
/// All time arguments are days since t0.
class Model {
public:
    explicit Model(ModelParameters params);

    const ModelParameters& params() const { return params_; }
    double population() const { return params_.N; }
    double lambda1() const { return lambda1_; }
    double lambda2() const { return lambda2_; }
    double horizon() const { return horizon_; }

    double control_measure(double t) const;
    double detection_fraction(double t) const;
    double fatality_rate(double t) const;
    TransitionRates transition_rates(double t) const;
    /// Throws ParameterError if theta(t) == 0 or omega(t) == 1.
    ContactScalers contact_scalers(double t) const;
    CoefficientSnapshot coefficients(double t) const;

    /// Infectious mass M(t) weighting each infectious compartment.
    double infectious_pressure(const StateVector& y, double t) const;
    double infectious_pressure(const StateVector& y, const CoefficientSnapshot& c) const;

    /// Right-hand side of the nine-compartment system for contact rate `beta`.
    StateVector vector_field(const StateVector& y, double t, double beta) const;

    /// S = N - 1, E = 1, everything else empty.
    StateVector initial_state() const;

private:
    CoefficientSnapshot coefficients_unchecked(double t) const;

    ModelParameters params_;
    double lambda1_;
    double lambda2_;
    double horizon_;
};

}  // namespace seihrd
