#include "gcoreset/parallel.hpp"

namespace gcoreset {
namespace {

std::size_t hardware_threads() noexcept {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

std::atomic<std::size_t>& limit() noexcept {
  static std::atomic<std::size_t> value{hardware_threads()};
  return value;
}

}  // namespace

void set_max_threads(std::size_t n) noexcept { limit().store(n == 0 ? hardware_threads() : n); }

std::size_t max_threads() noexcept { return limit().load(); }

}  // namespace gcoreset
