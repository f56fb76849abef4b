#pragma once

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "sysrisk/workbench/scenario.hpp"

namespace sysrisk::workbench {

struct ScenarioSummary {
  std::string id;
  std::string name;
  ScenarioKind kind;
  std::string created_at;
  std::uint64_t version = 0;
};

/// Directory of <id>.json files. Writes go to a temporary file that is then
/// renamed over the target, so readers never see a partial record. Saving an
/// existing id overwrites it with version + 1 (last writer wins).
class ScenarioStore {
 public:
  explicit ScenarioStore(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  /// Validates, assigns id and created_at when empty, bumps the version and
  /// returns the record as stored.
  ScenarioDefinition save(ScenarioDefinition def);

  /// Throws Error(NotFound) for unknown ids.
  ScenarioDefinition load(const std::string& id) const;
  bool contains(const std::string& id) const;

  /// Summaries in creation order.
  std::vector<ScenarioSummary> list() const;

 private:
  std::filesystem::path path_for(const std::string& id) const;

  std::filesystem::path root_;
  mutable std::mutex write_mutex_;
};

/// Fresh 128-bit random identifier, 32 lowercase hex digits.
std::string generate_id();

}  // namespace sysrisk::workbench
