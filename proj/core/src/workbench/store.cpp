#include "sysrisk/workbench/store.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "sysrisk/error.hpp"

namespace sysrisk::workbench {
namespace fs = std::filesystem;

namespace {

// Strictly increasing within the process so creation order survives
// same-microsecond saves.
std::string next_timestamp() {
  static std::mutex mutex;
  static std::int64_t last_us = 0;
  std::lock_guard lock(mutex);
  const auto now = std::chrono::system_clock::now();
  std::int64_t us =
      std::chrono::duration_cast<std::chrono::microseconds>(now.time_since_epoch()).count();
  us = std::max(us, last_us + 1);
  last_us = us;

  const std::time_t secs = static_cast<std::time_t>(us / 1000000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[64];
  std::snprintf(out, sizeof out, "%s.%06lldZ", buf, static_cast<long long>(us % 1000000));
  return out;
}

bool valid_id(const std::string& id) {
  return !id.empty() && id.size() <= 64 &&
         std::all_of(id.begin(), id.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  c == '-' || c == '_';
         });
}

ScenarioDefinition read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::NotFound, "cannot open " + path.string());
  try {
    return definition_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Internal, "corrupt scenario file " + path.string() + ": " + e.what());
  }
}

}  // namespace

std::string generate_id() {
  static thread_local std::mt19937_64 engine{[] {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd()};
    return std::mt19937_64(seq);
  }()};
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(engine()),
                static_cast<unsigned long long>(engine()));
  return buf;
}

ScenarioStore::ScenarioStore(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec || !fs::is_directory(root_))
    fail(ErrorCode::Internal, "scenario store path is not a writable directory: " + root_.string());
}

fs::path ScenarioStore::path_for(const std::string& id) const {
  if (!valid_id(id)) fail(ErrorCode::NotFound, "unknown scenario id '" + id + "'", "id");
  return root_ / (id + ".json");
}

ScenarioDefinition ScenarioStore::save(ScenarioDefinition def) {
  validate(def.config);
  if (def.id.empty()) def.id = generate_id();
  if (!valid_id(def.id))
    fail(ErrorCode::Validation, "scenario id may only hold [A-Za-z0-9_-]", "id");

  std::lock_guard lock(write_mutex_);
  const fs::path target = path_for(def.id);
  std::uint64_t previous = 0;
  if (fs::exists(target)) {
    const auto existing = read_file(target);
    previous = existing.version;
    if (def.created_at.empty()) def.created_at = existing.created_at;
  }
  if (def.created_at.empty()) def.created_at = next_timestamp();
  def.version = previous + 1;

  const fs::path tmp = root_ / ("." + def.id + "." + generate_id() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << to_json(def).dump(2) << '\n';
    out.flush();
    if (!out) fail(ErrorCode::Internal, "failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    fail(ErrorCode::Internal, "failed to commit scenario " + def.id + ": " + ec.message());
  }
  return def;
}

ScenarioDefinition ScenarioStore::load(const std::string& id) const {
  const fs::path path = path_for(id);
  if (!fs::exists(path)) fail(ErrorCode::NotFound, "unknown scenario id '" + id + "'", "id");
  return read_file(path);
}

bool ScenarioStore::contains(const std::string& id) const {
  return valid_id(id) && fs::exists(root_ / (id + ".json"));
}

std::vector<ScenarioSummary> ScenarioStore::list() const {
  std::vector<ScenarioSummary> out;
  for (const auto& entry : fs::directory_iterator(root_)) {
    const auto& p = entry.path();
    if (!entry.is_regular_file() || p.extension() != ".json" || p.filename().string()[0] == '.')
      continue;
    const auto def = read_file(p);
    if (def.id != p.stem().string()) continue;  // not a record written by this store
    out.push_back({def.id, def.name, def.kind(), def.created_at, def.version});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.created_at, a.id) < std::tie(b.created_at, b.id);
  });
  return out;
}

}  // namespace sysrisk::workbench
