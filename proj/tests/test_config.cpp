#include <doctest.h>

#include <string>

#include "mcsense/config.hpp"

using namespace mcsense;

namespace {

const std::string kReference = R"({
  "L": 32,
  "p": 10,
  "omega_max": 0.25,
  "active_set": [8, 16, 17, 18, 29, 30],
  "snr_grid_db": [-2, 0, 1, 3],
  "M_grid": [11, 21, 31, 41, 51, 61],
  "trials": 1000,
  "base_seed": 1
})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

std::string error_of(const std::string& text) {
  try {
    parse_config_text(text, "cfg.json");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("reference configuration is accepted") {
  const auto cfg = parse_config_text(kReference);
  CHECK(cfg.num_channels == 32);
  CHECK(cfg.num_cosets == 10);
  CHECK(cfg.max_active() == 8);
  CHECK(cfg.num_active == 6);
  CHECK(cfg.active_set == std::vector<int>{8, 16, 17, 18, 29, 30});
  CHECK(cfg.m_grid.size() == 6u);
  CHECK(cfg.trials == 1000);
  CHECK(cfg.pattern_mode == PatternMode::kFixed);
  CHECK(cfg.snr_convention == SnrConvention::kTotalNoise);
  CHECK(parse_config(MCSENSE_TEST_DATA_DIR "/ref.json").base_seed == 20140101u);
}

TEST_CASE("p must exceed N_max") {
  const auto err = error_of(replace(kReference, "\"p\": 10", "\"p\": 8"));
  CHECK(err.find("p > N_max") != std::string::npos);
  CHECK(err.find("cfg.json:3") != std::string::npos);
}

TEST_CASE("rejections with line-accurate messages") {
  CHECK(error_of(replace(kReference, "[8, 16, 17", "[8, 16, 16")).find("duplicate") != std::string::npos);
  CHECK(error_of(replace(kReference, "[8, 16, 17", "[16, 8, 17")).find("sorted") != std::string::npos);

  const auto unknown = error_of(replace(kReference, "\"trials\"", "\"trails\": 3,\n  \"trials\""));
  CHECK(unknown.find("unknown key \"trails\"") != std::string::npos);
  CHECK(unknown.find("cfg.json:8") != std::string::npos);

  const auto malformed = error_of(replace(kReference, "\"p\": 10,", "\"p\": 10"));
  CHECK(malformed.find("line 4") != std::string::npos);

  CHECK(error_of(replace(kReference, "\"p\": 10", "\"p\": \"ten\"")).find("cfg.json:3") != std::string::npos);
  CHECK(error_of(replace(kReference, "\"trials\": 1000", "\"trials\": 0")).find("cfg.json:8") != std::string::npos);
  CHECK(error_of(replace(kReference, "[11, 21", "[0, 21")).find("cfg.json:7") != std::string::npos);
  CHECK(error_of(replace(kReference, "  \"trials\": 1000,\n", "")).find("missing required key \"trials\"") !=
        std::string::npos);
  CHECK(error_of("[1, 2]").find("JSON object") != std::string::npos);
}

TEST_CASE("optional keys") {
  auto text = replace(kReference, "\"trials\": 1000", "\"trials\": 10, \"pattern\": [0,1,2,3,4,5,6,7,8,9], "
                                                     "\"noise_variance\": 0, \"snr_convention\": \"in_band\"");
  const auto cfg = parse_config_text(text);
  REQUIRE(cfg.pattern.has_value());
  CHECK(cfg.fixed_pattern().offsets().front() == 0);
  CHECK(cfg.noise_variance == 0.0);
  CHECK(cfg.snr_convention == SnrConvention::kInBand);

  CHECK(error_of(replace(kReference, "\"trials\": 1000", "\"trials\": 1, \"pattern\": [0, 1]")).find("p offsets") !=
        std::string::npos);
  CHECK(error_of(replace(kReference, "\"trials\": 1000", "\"trials\": 1, \"pattern_mode\": \"sometimes\"")) !=
        "");

  const auto random = replace(kReference, "\"active_set\": [8, 16, 17, 18, 29, 30]",
                              "\"randomize_active_set\": true, \"num_active\": 5");
  const auto rcfg = parse_config_text(random);
  CHECK(rcfg.randomize_active_set);
  CHECK(rcfg.num_active == 5);
  CHECK(error_of(replace(random, ", \"num_active\": 5", "")).find("num_active") != std::string::npos);
  CHECK(error_of(replace(random, "\"num_active\": 5", "\"num_active\": 9")).find("N_max") != std::string::npos);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(parse_config("/nonexistent/config.json"), ConfigError);
}
