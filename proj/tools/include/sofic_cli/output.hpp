#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace sofic::cli {

std::string cell(double x);
std::string cell(std::size_t x);
std::string cell(bool x);
inline std::string cell(const std::string& x) { return x; }
inline std::string cell(const char* x) { return x; }

/// In-memory CSV table; rendered with '\n' line ends and shortest round-trip
/// doubles so that equal inputs give equal bytes.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  template <typename... Cells>
  void add(const Cells&... cells) {
    rows_.push_back({cell(cells)...});
  }
  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }
  [[nodiscard]] std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct RunContext {
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
  std::vector<std::string> written;

  /// Writes out_dir/name and records it for the manifest.
  void write(const std::string& name, const std::string& content);
};

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. The first
/// exception thrown by a worker is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sofic::cli
