#pragma once

#include <nlohmann/json.hpp>

#include "rsm/lcd.hpp"
#include "rsm/mrlcd.hpp"
#include "rsm/rounding.hpp"
#include "rsm/threshold.hpp"

namespace rsm {

void to_json(nlohmann::json& j, Ternary t);
void to_json(nlohmann::json& j, const LcdBracket& b);
void to_json(nlohmann::json& j, const BlockLcd& b);
void to_json(nlohmann::json& j, const MrlcdReport& r);
void to_json(nlohmann::json& j, const ThresholdReport& r);
void to_json(nlohmann::json& j, const MedianThresholdReport& r);
void to_json(nlohmann::json& j, const RoundingResult& r);

/// Serializes a report document; pass erase_wall_clock to compare runs.
std::string dump_report(const nlohmann::json& doc, bool erase_wall_clock = false);

void write_text_file(const std::string& path, const std::string& content);

} // namespace rsm
