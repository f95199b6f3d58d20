#include "mcsense/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace mcsense {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "L",           "p",          "omega_max",        "active_set",   "num_active",
    "randomize_active_set",      "snr_grid_db",      "M_grid",       "trials",
    "base_seed",   "pattern_mode", "pattern",        "noise_variance", "snr_convention",
};

class Locator {
 public:
  Locator(std::string_view text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  // 1-based line of the first occurrence of "key", or 0 when absent.
  int line_of(const std::string& key) const {
    const auto pos = text_.find("\"" + key + "\"");
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    std::string where = origin_;
    if (int line = key.empty() ? 0 : line_of(key); line > 0) where += ":" + std::to_string(line);
    throw ConfigError(where + ": " + what);
  }

 private:
  std::string_view text_;
  std::string origin_;
};

template <typename T>
T get(const json& doc, const Locator& loc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    loc.fail(key, "bad value for \"" + key + "\": " + e.what());
  }
}

}  // namespace

ExperimentConfig parse_config_text(std::string_view text, const std::string& origin) {
  const Locator loc(text, origin);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!doc.is_object()) loc.fail("", "top level must be a JSON object");

  for (const auto& item : doc.items()) {
    if (!kKnownKeys.contains(item.key())) loc.fail(item.key(), "unknown key \"" + item.key() + "\"");
  }
  for (const char* key : {"L", "p", "omega_max", "snr_grid_db", "M_grid", "trials", "base_seed"}) {
    if (!doc.contains(key)) loc.fail("", std::string("missing required key \"") + key + "\"");
  }

  ExperimentConfig cfg;
  cfg.num_channels = get<int>(doc, loc, "L");
  cfg.num_cosets = get<int>(doc, loc, "p");
  cfg.omega_max = get<double>(doc, loc, "omega_max");
  cfg.snr_grid_db = get<std::vector<double>>(doc, loc, "snr_grid_db");
  cfg.m_grid = get<std::vector<int>>(doc, loc, "M_grid");
  cfg.trials = get<int>(doc, loc, "trials");
  cfg.base_seed = get<std::uint64_t>(doc, loc, "base_seed");
  cfg.randomize_active_set =
      doc.contains("randomize_active_set") && get<bool>(doc, loc, "randomize_active_set");

  if (cfg.randomize_active_set) {
    if (doc.contains("active_set")) loc.fail("active_set", "active_set conflicts with randomize_active_set");
    if (!doc.contains("num_active")) loc.fail("randomize_active_set", "randomize_active_set requires num_active");
    cfg.active_set.clear();
    cfg.num_active = get<int>(doc, loc, "num_active");
  } else {
    if (!doc.contains("active_set")) loc.fail("", "missing required key \"active_set\"");
    cfg.active_set = get<std::vector<int>>(doc, loc, "active_set");
    cfg.num_active = static_cast<int>(cfg.active_set.size());
    if (doc.contains("num_active") && get<int>(doc, loc, "num_active") != cfg.num_active)
      loc.fail("num_active", "num_active does not match the length of active_set");
    std::vector<int> sorted = cfg.active_set;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      loc.fail("active_set", "active_set contains duplicate channel indices");
    if (sorted != cfg.active_set) loc.fail("active_set", "active_set must be sorted ascending");
  }

  if (doc.contains("pattern_mode")) {
    const auto mode = get<std::string>(doc, loc, "pattern_mode");
    if (mode == "fixed") cfg.pattern_mode = PatternMode::kFixed;
    else if (mode == "per_trial") cfg.pattern_mode = PatternMode::kPerTrial;
    else loc.fail("pattern_mode", "pattern_mode must be \"fixed\" or \"per_trial\"");
  }
  if (doc.contains("pattern")) cfg.pattern = get<std::vector<int>>(doc, loc, "pattern");
  if (doc.contains("noise_variance")) cfg.noise_variance = get<double>(doc, loc, "noise_variance");
  if (doc.contains("snr_convention")) {
    const auto conv = get<std::string>(doc, loc, "snr_convention");
    if (conv == "total_noise") cfg.snr_convention = SnrConvention::kTotalNoise;
    else if (conv == "in_band") cfg.snr_convention = SnrConvention::kInBand;
    else loc.fail("snr_convention", "snr_convention must be \"total_noise\" or \"in_band\"");
  }

  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    // Point at the most relevant key for the common invariant failures.
    const std::string what = e.what();
    std::string key;
    if (what.starts_with("p ")) key = "p";
    else if (what.starts_with("N ") || what.starts_with("active_set")) key = cfg.randomize_active_set ? "num_active" : "active_set";
    else if (what.starts_with("M_grid") || what.starts_with("every M")) key = "M_grid";
    else if (what.starts_with("trials")) key = "trials";
    else if (what.starts_with("omega_max") || what.starts_with("sub-Nyquist")) key = "omega_max";
    else if (what.starts_with("pattern") || what.starts_with("an explicit") || what.starts_with("CosetPattern")) key = "pattern";
    else if (what.starts_with("snr_grid")) key = "snr_grid_db";
    else if (what.starts_with("noise")) key = "noise_variance";
    else if (what.starts_with("L ")) key = "L";
    loc.fail(key, what);
  }
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

}  // namespace mcsense
