#include "core/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace dwell::fft {

namespace {

// The FFTW planner is not thread safe; plan creation is serialized and each
// thread keeps its own plans + aligned buffer so execution runs lock-free.
std::mutex planner_mutex;

struct PlanSlot {
  fftw_complex* buf = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  PlanSlot() = default;
  PlanSlot(const PlanSlot&) = delete;
  PlanSlot& operator=(const PlanSlot&) = delete;
  PlanSlot(PlanSlot&& other) noexcept { *this = std::move(other); }
  PlanSlot& operator=(PlanSlot&& other) noexcept {
    std::swap(buf, other.buf);
    std::swap(forward, other.forward);
    std::swap(backward, other.backward);
    return *this;
  }
  ~PlanSlot() {
    std::lock_guard<std::mutex> lock(planner_mutex);
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (buf) fftw_free(buf);
  }
};

PlanSlot make_slot(int n) {
  std::lock_guard<std::mutex> lock(planner_mutex);
  PlanSlot slot;
  slot.buf = fftw_alloc_complex(static_cast<size_t>(n));
  if (!slot.buf) throw std::bad_alloc();
  slot.forward = fftw_plan_dft_1d(n, slot.buf, slot.buf, FFTW_FORWARD, FFTW_ESTIMATE);
  slot.backward = fftw_plan_dft_1d(n, slot.buf, slot.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!slot.forward || !slot.backward) throw std::runtime_error("fftw plan creation failed");
  return slot;
}

PlanSlot& slot_for(int n) {
  thread_local std::unordered_map<int, PlanSlot> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_slot(n)).first;
  return it->second;
}

}  // namespace

void transform(std::span<std::complex<double>> data, bool inverse) {
  const int n = static_cast<int>(data.size());
  if (n == 0) throw std::invalid_argument("fft: empty input");
  PlanSlot& slot = slot_for(n);
  std::memcpy(slot.buf, data.data(), sizeof(fftw_complex) * static_cast<size_t>(n));
  fftw_execute(inverse ? slot.backward : slot.forward);
  std::memcpy(data.data(), slot.buf, sizeof(fftw_complex) * static_cast<size_t>(n));
}

}  // namespace dwell::fft
