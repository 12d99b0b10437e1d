#pragma once

#include <charconv>
#include <chrono>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "rsm/experiments.hpp"

namespace rsm::detail {

inline constexpr int kSchemaVersion = 1;

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Runs fn(t) for t in [0, trials); per-trial outputs must go into slots
// indexed by t so the schedule cannot affect the report.
inline void parallel_trials(std::int64_t trials, int threads,
                            const std::function<void(std::int64_t)>& fn) {
  if (threads <= 1 || trials <= 1) {
    for (std::int64_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  const int workers = std::min<std::int64_t>(threads, trials);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::int64_t chunk = (trials + workers - 1) / workers;
      const std::int64_t lo = w * chunk;
      const std::int64_t hi = std::min(trials, lo + chunk);
      for (std::int64_t t = lo; t < hi; ++t) fn(t);
    });
  }
  for (auto& th : pool) th.join();
}

inline void csv_cell(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

inline void csv_cell(std::string& out, std::int64_t v) {
  out.append(std::to_string(v));
}

template <typename... Cells>
void csv_row(std::string& out, const Cells&... cells) {
  bool first = true;
  auto emit = [&](const auto& c) {
    if (!first) out.push_back(',');
    first = false;
    csv_cell(out, c);
  };
  (emit(cells), ...);
  out.push_back('\n');
}

// Assembles the common report envelope.
nlohmann::json report_envelope(const ExperimentConfig& cfg, const std::string& experiment);

} // namespace rsm::detail
