#include "oal/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace oal::kernels {

#if defined(OAL_HAVE_AVX2)
const Ops& avx2_ops();
#endif

bool avx2_available() {
#if defined(OAL_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

namespace {

const Ops* resolve(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &scalar_ops();
    case Backend::avx2:
#if defined(OAL_HAVE_AVX2)
      if (avx2_available()) return &avx2_ops();
#endif
      throw std::runtime_error("avx2 backend not available on this machine");
    case Backend::automatic:
    default:
#if defined(OAL_HAVE_AVX2)
      if (avx2_available()) return &avx2_ops();
#endif
      return &scalar_ops();
  }
}

std::atomic<const Ops*> active{nullptr};

}  // namespace

const Ops& ops() {
  const Ops* p = active.load(std::memory_order_acquire);
  if (p == nullptr) {
    p = resolve(Backend::automatic);
    active.store(p, std::memory_order_release);
  }
  return *p;
}

void set_backend(Backend b) {
  active.store(resolve(b), std::memory_order_release);
}

}  // namespace oal::kernels
