#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "seihrd/cir.hpp"
#include "seihrd/dopri.hpp"
#include "seihrd/ensemble.hpp"
#include "seihrd/indicators.hpp"
#include "seihrd/model.hpp"

namespace seihrd {

/// Everything a run needs: model coefficients, contact-rate diffusion,
/// ensemble settings and output selection.
struct RunConfig {
    ModelParameters model = ModelParameters::china();
    CirParameters cir{1.0, 0.2887, 0.0, 0.2887};
    CirScheme scheme = CirScheme::exact;

    std::size_t paths = 32768;
    std::uint64_t seed = 42;
    double dt = 1.0 / 6.0;
    std::vector<double> report_times{69.0, 119.0};
    double percentile_ws = 0.95;
    Tolerances tolerances = Tolerances::for_population(1400812636.0);
    int threads = 0;

    IndicatorOptions indicators;
    std::size_t histogram_bins = 50;
    Variable histogram_variable = Variable::I;
    double histogram_time = 69.0;

    std::string output_dir;  // empty: resolved at run time
    std::set<std::string> emit{"trajectory", "summary", "indicators", "histograms", "curves"};

    /// Throws ConfigError naming the offending field.
    void validate() const;

    /// Ensemble settings on the model grid [0, horizon] with step dt.
    EnsembleConfig ensemble_config() const;

    bool operator==(const RunConfig&) const = default;
};

/// The China parameter set with sigma = 0 and mu = beta0 = beta_I.
RunConfig default_config();

/// INI text with sections [model], [cir], [ensemble], [indicators], [output].
/// Missing [model] keys and unknown keys are errors; the other sections fall
/// back to defaults (cir.mu -> beta_I, cir.beta0 -> mu, ensemble.abs_tol -> 1e-8 N).
/// Throws ConfigError.
RunConfig parse_config_text(std::string_view text);
RunConfig parse_config(const std::filesystem::path& file);

std::string format_config(const RunConfig& config);
void write_config(const RunConfig& config, const std::filesystem::path& file);

std::string_view scheme_name(CirScheme s);
std::string_view hospital_lag_name(HospitalLag lag);

}  // namespace seihrd
