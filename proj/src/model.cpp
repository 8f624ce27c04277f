#include "seihrd/model.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "seihrd/errors.hpp"

namespace seihrd {

namespace {

using std::chrono::sys_days;

void require(bool ok, const char* field, const std::string& constraint) {
    if (!ok) {
        throw ParameterError(std::string(field) + ": " + constraint);
    }
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

double days_between(Date from, Date to) {
    return static_cast<double>((sys_days{to} - sys_days{from}).count());
}

}  // namespace

Date parse_date(std::string_view text) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    const std::string s(text);
    if (s.size() != 10 || std::sscanf(s.c_str(), "%4d-%2u-%2u%c", &y, &m, &d, &tail) != 3) {
        throw ParameterError("invalid ISO-8601 date '" + s + "' (expected YYYY-MM-DD)");
    }
    const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) {
        throw ParameterError("invalid calendar date '" + s + "'");
    }
    return date;
}

std::string format_date(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

void ModelParameters::validate() const {
    require(std::isfinite(N) && N >= 1.0, "N", "population must be >= 1");
    require(t0.ok() && lambda1.ok() && lambda2.ok() && T.ok(), "dates", "must be valid calendar dates");
    require(sys_days{t0} < sys_days{lambda1}, "lambda1", "must be after t0");
    require(sys_days{lambda1} < sys_days{lambda2}, "lambda2", "must be after lambda1");
    require(sys_days{lambda2} < sys_days{T}, "T", "must be after lambda2");
    require(in_unit(theta_low), "theta_low", "must lie in [0,1]");
    require(in_unit(theta_high), "theta_high", "must lie in [0,1]");
    require(theta_low > 0.0, "theta_low", "must be > 0 (contact scalers divide by theta)");
    require(theta_low <= theta_high, "theta_high", "must be >= theta_low");
    require(omega_low >= 0.0, "omega_low", "must be >= 0");
    require(delta_omega >= 0.0, "delta_omega", "must be >= 0");
    require(omega_high() <= theta_low, "delta_omega",
            "omega_low + delta_omega must not exceed theta_low (all deaths are detected)");
    require(alpha_H >= 0.0 && alpha_H < 1.0, "alpha_H", "must lie in [0,1)");
    require(d_E > 0.0, "d_E", "must be > 0");
    require(d_I > 0.0, "d_I", "must be > 0");
    require(d_Iu > 0.0, "d_Iu", "must be > 0");
    require(d_g >= 0.0, "d_g", "must be >= 0");
    require(d_g < d_I, "d_g", "must be < d_I so that gamma_I = 1/(d_I - g(t)) stays finite and positive");
    require(delta_R >= 0.0, "delta_R", "must be >= 0");
    require(C_o >= 0.0, "C_o", "must be >= 0");
    require(in_unit(p), "p", "must lie in [0,1]");
    require(beta_I >= 0.0, "beta_I", "must be >= 0");
    require(in_unit(C_E), "C_E", "must lie in [0,1]");
    require(in_unit(C_u), "C_u", "must lie in [0,1]");
    require(kappa1 >= 0.0 && kappa1 <= 0.2, "kappa1", "must lie in [0, 0.2]");
}

ModelParameters ModelParameters::china() {
    using namespace std::chrono;
    ModelParameters p;
    p.N = 1400812636.0;
    p.t0 = 2019y / December / 1;
    p.lambda1 = 2020y / January / 23;
    p.lambda2 = 2020y / February / 8;
    p.T = 2020y / March / 29;
    p.theta_low = 0.14;
    p.theta_high = 0.65;
    p.alpha_H = 0.0275;
    p.d_E = 5.5;
    p.d_I = 6.7;
    p.d_Iu = 7.3;
    p.d_g = 6.0;
    p.C_o = 14.0;
    p.p = 1.0;
    p.beta_I = 0.2887;
    p.C_E = 0.3643;
    p.C_u = 0.4010;
    p.delta_R = 7.0;
    p.delta_omega = 0.0206;
    p.omega_low = 0.0157;
    p.kappa1 = 0.1082;
    return p;
}

int day_index(Date date, const ModelParameters& params) {
    if (sys_days{date} < sys_days{params.t0} || sys_days{params.T} < sys_days{date}) {
        throw std::out_of_range("date " + format_date(date) + " outside [" + format_date(params.t0) +
                                ", " + format_date(params.T) + "]");
    }
    return static_cast<int>(days_between(params.t0, date));
}

std::string_view compartment_name(Compartment c) {
    static constexpr std::string_view names[kCompartments] = {"S",  "E",  "I",  "Iu", "HR",
                                                              "HD", "Rd", "Ru", "D"};
    return names[c];
}

double StateVector::total() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

ContactScalers contact_scalers(double theta, double omega, const TransitionRates& r,
                               const ModelParameters& params) {
    if (!(theta > 0.0)) throw ParameterError("contact scalers: detection fraction theta must be > 0");
    if (!(omega < 1.0)) throw ParameterError("contact scalers: fatality rate omega must be < 1");
    if (!(params.alpha_H < 1.0)) throw ParameterError("contact scalers: alpha_H must be < 1");

    const double a_e = params.C_E;
    const double a_iu = params.C_u + (1.0 - params.C_u) * (1.0 - theta) / (1.0 - omega);
    // Hospital scaler: share alpha_H of infections caused by H_R/H_D, relative to the
    // weighted mean hospital sojourn.
    const double community = 1.0 / r.gamma_I + a_e / r.gamma_E + (1.0 - theta) * a_iu / r.gamma_Iu;
    const double ratio = omega / theta;
    const double sojourn = (1.0 - ratio) / r.gamma_HR + ratio / r.gamma_HD;
    const double a_h = params.alpha_H * community / ((1.0 - params.alpha_H) * theta * sojourn);
    return {a_e, a_iu, a_h, a_h};
}

Model::Model(ModelParameters params) : params_(params) {
    params_.validate();
    lambda1_ = days_between(params_.t0, params_.lambda1);
    lambda2_ = days_between(params_.t0, params_.lambda2);
    horizon_ = days_between(params_.t0, params_.T);
}

double Model::control_measure(double t) const {
    if (t <= lambda1_) return 1.0;
    return std::exp(-params_.kappa1 * (t - lambda1_));
}

double Model::detection_fraction(double t) const {
    if (t <= lambda1_) return params_.theta_low;
    if (t >= lambda2_) return params_.theta_high;
    const double w = (t - lambda1_) / (lambda2_ - lambda1_);
    return params_.theta_low + (params_.theta_high - params_.theta_low) * w;
}

double Model::fatality_rate(double t) const {
    const double m = control_measure(t);
    return m * params_.omega_high() + (1.0 - m) * params_.omega_low;
}

TransitionRates Model::transition_rates(double t) const {
    const double g = params_.d_g * (1.0 - control_measure(t));
    const double gamma_iu = 1.0 / (params_.d_Iu + g);
    return {1.0 / params_.d_E, 1.0 / (params_.d_I - g), gamma_iu, gamma_iu,
            1.0 / (params_.d_Iu + g + params_.delta_R)};
}

ContactScalers Model::contact_scalers(double t) const {
    return seihrd::contact_scalers(detection_fraction(t), fatality_rate(t), transition_rates(t), params_);
}

CoefficientSnapshot Model::coefficients(double t) const { return coefficients_unchecked(t); }

// Construction-time validation guarantees theta >= theta_low > 0 and omega < 1,
// so the scaler guards cannot fire here.
CoefficientSnapshot Model::coefficients_unchecked(double t) const {
    CoefficientSnapshot c;
    c.m = control_measure(t);
    c.theta = detection_fraction(t);
    c.omega = c.m * params_.omega_high() + (1.0 - c.m) * params_.omega_low;

    const double g = params_.d_g * (1.0 - c.m);
    c.gamma_E = 1.0 / params_.d_E;
    c.gamma_I = 1.0 / (params_.d_I - g);
    c.gamma_Iu = 1.0 / (params_.d_Iu + g);
    c.gamma_HR = c.gamma_Iu;
    c.gamma_HD = 1.0 / (params_.d_Iu + g + params_.delta_R);

    const auto a = seihrd::contact_scalers(
        c.theta, c.omega, {c.gamma_E, c.gamma_I, c.gamma_Iu, c.gamma_HR, c.gamma_HD}, params_);
    c.A_E = a.A_E;
    c.A_Iu = a.A_Iu;
    c.A_HR = a.A_HR;
    c.A_HD = a.A_HD;
    return c;
}

double Model::infectious_pressure(const StateVector& y, const CoefficientSnapshot& c) const {
    return c.m * (c.A_E * y[E] + y[I] + c.A_Iu * y[Iu] + c.A_HR * y[HR] + c.A_HD * y[HD]);
}

double Model::infectious_pressure(const StateVector& y, double t) const {
    return infectious_pressure(y, coefficients_unchecked(t));
}

StateVector Model::vector_field(const StateVector& y, double t, double beta) const {
    const CoefficientSnapshot c = coefficients_unchecked(t);
    const double infection = beta * y[S] * infectious_pressure(y, c) / params_.N;
    const double onset = c.gamma_I * y[I];
    const double out_e = c.gamma_E * y[E];
    const double out_iu = c.gamma_Iu * y[Iu];
    const double out_hr = c.gamma_HR * y[HR];
    const double out_hd = c.gamma_HD * y[HD];

    StateVector dy;
    dy[S] = -infection;
    dy[E] = infection - out_e;
    dy[I] = out_e - onset;
    dy[Iu] = (1.0 - c.theta) * onset - out_iu;
    dy[HR] = (c.theta - c.omega) * onset - out_hr;
    dy[HD] = c.omega * onset - out_hd;
    dy[Rd] = out_hr;
    dy[Ru] = out_iu;
    dy[D] = out_hd;
    return dy;
}

StateVector Model::initial_state() const {
    StateVector y;
    y[S] = params_.N - 1.0;
    y[E] = 1.0;
    return y;
}

}  // namespace seihrd
