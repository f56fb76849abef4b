#include "sysrisk/complexity/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sysrisk/error.hpp"
#include "sysrisk/stats.hpp"

namespace sysrisk::complexity {

std::string to_string(FragilityBand band) {
  switch (band) {
    case FragilityBand::Low: return "LOW";
    case FragilityBand::Medium: return "MEDIUM";
    case FragilityBand::High: return "HIGH";
  }
  return "LOW";
}

FragilityBand classify(double score, const ComplexityOptions& options) {
  if (score >= options.high_cutpoint) return FragilityBand::High;
  if (score >= options.medium_cutpoint) return FragilityBand::Medium;
  return FragilityBand::Low;
}

ComplexityReport compute_complexity(const MultivariateSeries& input,
                                    const ComplexityOptions& options) {
  require(options.edge_threshold >= 0.0 && options.edge_threshold <= 1.0,
          "edge_threshold must lie in [0, 1]", "edge_threshold");
  require(options.medium_cutpoint <= options.high_cutpoint,
          "medium cutpoint must not exceed high cutpoint", "medium_cutpoint");
  if (options.returns_mode && input.length() < 3) {
    fail(ErrorCode::DegenerateInput, "returns mode needs at least 3 samples per channel",
         "returns_mode");
  }
  const MultivariateSeries series = options.returns_mode ? input.differenced() : input;

  ComplexityReport report;
  std::vector<std::size_t> kept;
  for (std::size_t c = 0; c < series.channels(); ++c) {
    if (!stats::is_constant(series.channel(c))) {
      kept.push_back(c);
      report.channels.push_back(series.names()[c]);
    } else {
      report.dropped_channels.push_back(series.names()[c]);
    }
  }
  if (kept.size() < 2) {
    fail(ErrorCode::DegenerateInput,
         "complexity needs at least 2 non-constant channels, got " + std::to_string(kept.size()),
         "channels");
  }

  const std::size_t n = kept.size();
  report.correlation.assign(n, std::vector<double>(n, 0.0));
  double sum_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    report.correlation[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double rho = stats::pearson(series.channel(kept[i]), series.channel(kept[j]));
      report.correlation[i][j] = report.correlation[j][i] = rho;
      sum_abs += std::fabs(rho);
      if (std::fabs(rho) >= options.edge_threshold) report.edges.push_back({i, j, rho});
    }
  }
  const double pairs = static_cast<double>(n * (n - 1) / 2);
  report.score = std::clamp(sum_abs / pairs, 0.0, 1.0);
  report.band = classify(report.score, options);
  return report;
}

std::vector<RehAssetModel> reh_baseline(const MultivariateSeries& series) {
  std::vector<RehAssetModel> out;
  out.reserve(series.channels());
  for (std::size_t c = 0; c < series.channels(); ++c) {
    const auto x = series.channel(c);
    out.push_back({series.names()[c], stats::mean(x), stats::sample_stddev(x)});
  }
  return out;
}

SystemicComparison systemic_vs_individual(const MultivariateSeries& series, double sigma_limit,
                                          const ComplexityOptions& options) {
  require(sigma_limit > 0.0, "sigma_limit must be positive", "sigma_limit");
  SystemicComparison out;
  out.report = compute_complexity(series, options);
  out.baseline = reh_baseline(series);
  out.sigma_limit = sigma_limit;
  bool calm = true;
  for (const auto& m : out.baseline) calm = calm && m.residual_sigma < sigma_limit;
  out.individually_calm_systemically_coupled = calm && out.report.score >= options.high_cutpoint;
  return out;
}

nlohmann::json to_json(const ComplexityReport& report) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : report.edges)
    edges.push_back({{"a", report.channels[e.a]}, {"b", report.channels[e.b]}, {"rho", e.rho}});
  return {{"channels", report.channels},
          {"correlation_matrix", report.correlation},
          {"edges", std::move(edges)},
          {"score", report.score},
          {"fragility_band", to_string(report.band)},
          {"dropped_channels", report.dropped_channels}};
}

nlohmann::json to_json(const std::vector<RehAssetModel>& baseline) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& m : baseline)
    out.push_back({{"channel", m.channel},
                   {"expected_price", m.expected_price},
                   {"residual_sigma", m.residual_sigma}});
  return out;
}

nlohmann::json to_json(const SystemicComparison& comparison) {
  return {{"report", to_json(comparison.report)},
          {"baseline", to_json(comparison.baseline)},
          {"sigma_limit", comparison.sigma_limit},
          {"systemic_flag", comparison.individually_calm_systemically_coupled}};
}

}  // namespace sysrisk::complexity
