#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sysrisk/complexity/series.hpp"

namespace sysrisk::complexity {

enum class FragilityBand { Low, Medium, High };

std::string to_string(FragilityBand band);

struct ComplexityOptions {
  double edge_threshold = 0.5;  // |rho| cutoff for the edge set
  double medium_cutpoint = 0.3;
  double high_cutpoint = 0.7;
  bool returns_mode = false;    // correlate first differences instead of levels
};

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  double rho = 0.0;
};

struct ComplexityReport {
  std::vector<std::string> channels;               // retained, input order
  std::vector<std::vector<double>> correlation;    // over retained channels
  std::vector<Edge> edges;
  double score = 0.0;
  FragilityBand band = FragilityBand::Low;
  std::vector<std::string> dropped_channels;       // constant channels
};

FragilityBand classify(double score, const ComplexityOptions& options = {});

/// Score = mean |Pearson rho| over unordered pairs of non-constant channels.
/// Throws Error(DegenerateInput) if fewer than two channels remain.
ComplexityReport compute_complexity(const MultivariateSeries& series,
                                    const ComplexityOptions& options = {});

/// P = P* + eps per channel, each channel in isolation.
struct RehAssetModel {
  std::string channel;
  double expected_price = 0.0;  // P*, channel mean
  double residual_sigma = 0.0;  // sample sd of eps
};

std::vector<RehAssetModel> reh_baseline(const MultivariateSeries& series);

struct SystemicComparison {
  ComplexityReport report;
  std::vector<RehAssetModel> baseline;
  double sigma_limit = 0.0;
  /// Score at or above the high cutpoint while every sigma is below the limit.
  bool individually_calm_systemically_coupled = false;
};

SystemicComparison systemic_vs_individual(const MultivariateSeries& series,
                                          double sigma_limit = 1.0,
                                          const ComplexityOptions& options = {});

nlohmann::json to_json(const ComplexityReport& report);
nlohmann::json to_json(const std::vector<RehAssetModel>& baseline);
nlohmann::json to_json(const SystemicComparison& comparison);

}  // namespace sysrisk::complexity
