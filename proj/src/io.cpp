#include "rsm/io.hpp"

#include <fstream>

#include "rsm/errors.hpp"

namespace rsm {

void to_json(nlohmann::json& j, Ternary t) {
  switch (t) {
    case Ternary::Yes: j = "yes"; return;
    case Ternary::No: j = "no"; return;
    case Ternary::Indeterminate: j = "indeterminate"; return;
  }
}

void to_json(nlohmann::json& j, const LcdBracket& b) {
  j = {{"lo", b.lo},
       {"hi", b.hi},
       {"status", b.found() ? "found" : "exceeded-horizon"}};
}

void to_json(nlohmann::json& j, const BlockLcd& b) {
  j = {{"block", b.block}, {"indices", b.indices}, {"bracket", b.bracket}};
}

void to_json(nlohmann::json& j, const MrlcdReport& r) {
  j = {{"median", r.median_value},
       {"median_block", r.median_block},
       {"per_block", r.per_block},
       {"upper_half", r.upper_half},
       {"lower_half", r.lower_half}};
}

void to_json(nlohmann::json& j, const ThresholdReport& r) {
  j = {{"value", r.value}, {"p", r.p}, {"L", r.L}};
  if (r.certificate) {
    j["certificate"] = {{"t_star", r.certificate->t_star},
                        {"levy_at_t_star", r.certificate->levy_at_t_star}};
  } else {
    j["certificate"] = nullptr;
  }
}

void to_json(nlohmann::json& j, const MedianThresholdReport& r) {
  j = {{"median", r.median},
       {"median_block", r.median_block},
       {"per_block", r.per_block},
       {"upper_half", r.upper_half},
       {"lower_half", r.lower_half}};
}

void to_json(nlohmann::json& j, const RoundingResult& r) {
  j = {{"y_prime", r.y_prime},
       {"attempts", r.attempts},
       {"certified", r.certified},
       {"checks",
        {{"r1", r.checks.r1},
         {"r2_worst_ratio", r.checks.r2_worst_ratio},
         {"r3_ratio", r.checks.r3_ratio}}},
       {"constants", {{"C_cert", r.C_cert}, {"c_cert", r.c_cert}}},
       {"r1_max_over_attempts", r.r1_max_over_attempts}};
}

std::string dump_report(const nlohmann::json& doc, bool erase_wall_clock) {
  if (!erase_wall_clock) return doc.dump(2) + "\n";
  nlohmann::json copy = doc;
  copy.erase("wall_clock_ms");
  return copy.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parameter_error("cannot open output file " + path);
  out << content;
  if (!out) throw numeric_error("failed writing " + path);
}

} // namespace rsm
