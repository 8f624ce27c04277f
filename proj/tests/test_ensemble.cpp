#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "seihrd/ensemble.hpp"
#include "seihrd/errors.hpp"
#include "seihrd/statistics.hpp"

using namespace seihrd;

namespace {

const Model& china() {
    static const Model m(ModelParameters::china());
    return m;
}

EnsembleConfig small_config(std::size_t n, double sigma) {
    EnsembleConfig c;
    c.n_paths = n;
    c.master_seed = 42;
    c.cir = CirParameters{1.0, china().params().beta_I, sigma, china().params().beta_I};
    c.grid = model_grid(china(), 1.0 / 6.0);
    c.tolerances = Tolerances::for_population(china().population());
    return c;
}

}  // namespace

TEST_CASE("quantile rule") {
    const std::vector<double> constant(7, 3.5);
    for (double p : {0.0, 0.25, 0.95, 1.0}) CHECK(quantile(constant, p) == 3.5);

    std::vector<double> hundred(100);
    std::iota(hundred.begin(), hundred.end(), 1.0);
    std::shuffle(hundred.begin(), hundred.end(), std::mt19937(3));
    CHECK(quantile(hundred, 0.25) == doctest::Approx(25.75));
    CHECK(quantile(hundred, 0.0) == 1.0);
    CHECK(quantile(hundred, 1.0) == 100.0);
    CHECK(quantile(std::vector<double>{1, 2, 3, 4}, 0.5) == 2.5);
    CHECK(quantile(std::vector<double>{9}, 0.95) == 9.0);

    CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(quantile(hundred, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(quantile(hundred, -0.1), std::invalid_argument);
}

TEST_CASE("quantiles are monotone in p") {
    std::mt19937_64 rng(11);
    std::lognormal_distribution<double> dist(0.0, 1.0);
    std::vector<double> x(1001);
    for (auto& v : x) v = dist(rng);
    double prev = -INFINITY;
    for (int k = 0; k <= 100; ++k) {
        const double q = quantile(x, k / 100.0);
        CHECK(q >= prev);
        prev = q;
    }
}

TEST_CASE("mean and standard deviation") {
    const std::vector<double> x{2, 4, 4, 4, 5, 5, 7, 9};
    CHECK(mean(x) == 5.0);
    CHECK(standard_deviation(x) == doctest::Approx(std::sqrt(32.0 / 7.0)));
    CHECK(standard_deviation(std::vector<double>{1.0}) == 0.0);
}

TEST_CASE("histogram") {
    const auto single = histogram(std::vector<double>{4.0}, 10);
    CHECK(single.counts.size() == 10);
    CHECK(single.counts[0] == 1);
    CHECK(std::accumulate(single.counts.begin(), single.counts.end(), std::size_t{0}) == 1);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(100000);
    for (auto& v : x) v = u(rng);
    const auto h = histogram(x, 20);
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == x.size());
    const double expected = x.size() / 20.0;
    double chi2 = 0.0;
    for (auto c : h.counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < 36.19);  // 99th percentile of chi2(19)
    CHECK(h.bin_lower(0) == h.lo);
    CHECK(h.bin_upper(19) == h.hi);

    CHECK_THROWS_AS(histogram(x, 0), std::invalid_argument);
}

TEST_CASE("variable names round-trip") {
    for (int i = 0; i <= static_cast<int>(Variable::daily_recovered); ++i) {
        const auto v = static_cast<Variable>(i);
        CHECK(parse_variable(variable_name(v)) == v);
    }
    CHECK_FALSE(parse_variable("bogus").has_value());
}

TEST_CASE("a single sigma = 0 path equals the deterministic run") {
    const auto cfg = small_config(1, 0.0);
    const auto tr = simulate_path(cfg, china(), 0);
    const auto det = integrate_deterministic(china(), cfg.grid, cfg.tolerances);
    for (std::size_t i = 0; i < cfg.grid.nodes; ++i) CHECK(tr.states[i].values == det.states[i].values);

    const auto samples = run_ensemble(cfg, china());
    const auto summary = summarize(samples, 0.95);
    const auto& s = summary.at(69.0, Variable::I);
    CHECK(s.mean == det.states[*cfg.grid.node_at(69.0)][I]);
    CHECK(s.q1 == s.q3);
}

TEST_CASE("sigma = 0 ensembles have no spread") {
    const auto summary = summarize(run_ensemble(small_config(8, 0.0), china()), 0.95);
    for (const auto& s : summary.stats) {
        CHECK(s.q1 == s.q3);
        CHECK(s.q3 == s.p_ws);
        CHECK(s.stddev <= 1e-12 * std::max(1.0, std::abs(s.mean)));
    }
}

TEST_CASE("ensembles are bit-identical across worker counts and repeated runs") {
    auto cfg = small_config(48, 0.5);
    const auto serial = run_ensemble_serial(cfg, china());
    cfg.threads = 1;
    const auto one = run_ensemble(cfg, china());
    cfg.threads = 3;
    const auto three = run_ensemble(cfg, china());
    const auto again = run_ensemble(cfg, china());
    CHECK(serial == one);
    CHECK(one == three);
    CHECK(three == again);
    CHECK(summarize(serial, 0.95) == summarize(three, 0.95));

    cfg.master_seed = 43;
    CHECK_FALSE(run_ensemble(cfg, china()) == serial);
}

TEST_CASE("summary ordering and conservation on every path") {
    auto cfg = small_config(64, 0.5);
    const auto summary = summarize(run_ensemble(cfg, china()), 0.95);
    for (const auto& s : summary.stats) {
        CHECK(s.q1 <= s.median);
        CHECK(s.median <= s.q3);
        CHECK(s.q3 <= s.p_ws);
    }
    const double n = china().population();
    for (std::size_t p = 0; p < 16; ++p) {
        const auto tr = simulate_path(cfg, china(), p);
        for (const auto& y : tr.states) REQUIRE(std::abs(y.total() - n) <= 1e-9 * n);
    }
}

TEST_CASE("ensemble means stabilize with more paths") {
    const auto a = summarize(run_ensemble(small_config(128, 0.1), china()), 0.95);
    const auto b = summarize(run_ensemble(small_config(512, 0.1), china()), 0.95);
    const auto& sa = a.at(69.0, Variable::E);
    const auto& sb = b.at(69.0, Variable::E);
    CHECK(std::abs(sa.mean - sb.mean) < 4.0 * sb.stddev / std::sqrt(128.0));
}

TEST_CASE("ensemble config validation") {
    auto cfg = small_config(4, 0.1);
    cfg.n_paths = 0;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = small_config(4, 0.1);
    cfg.report_times = {200.0};
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = small_config(4, 0.1);
    cfg.percentile_ws = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = small_config(4, 0.1);
    cfg.cir.sigma = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
}

TEST_CASE("summary lookup errors") {
    const auto summary = summarize(run_ensemble(small_config(2, 0.0), china()), 0.95);
    CHECK_THROWS_AS(summary.at(70.0, Variable::I), std::out_of_range);
    CHECK_THROWS_AS(summary.at(69.0, Variable::beta), std::out_of_range);
}
