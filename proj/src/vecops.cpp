#include "continuo/vecops.hpp"

#include <stdexcept>

namespace continuo::vecops {

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sqdist_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double sum_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

double sumsq_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

}  // namespace detail

namespace {

struct Impl {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sqdist)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*sumsq)(const double*, std::size_t);
};

constexpr Impl kScalar{detail::dot_scalar, detail::sqdist_scalar,
                       detail::sum_scalar, detail::sumsq_scalar};

#if CONTINUO_HAVE_AVX2
constexpr Impl kAvx2{detail::dot_avx2, detail::sqdist_avx2, detail::sum_avx2,
                     detail::sumsq_avx2};
#endif

bool cpu_has_avx2() {
#if CONTINUO_HAVE_AVX2 && defined(__GNUC__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend pick_default() { return cpu_has_avx2() ? Backend::avx2 : Backend::scalar; }

Backend g_backend = pick_default();

const Impl& impl_for(Backend b) {
#if CONTINUO_HAVE_AVX2
  if (b == Backend::avx2) return kAvx2;
#endif
  (void)b;
  return kScalar;
}

void check_sizes(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("vecops: dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
}

}  // namespace

Backend active_backend() { return g_backend; }

bool backend_supported(Backend b) {
  return b == Backend::scalar || (b == Backend::avx2 && cpu_has_avx2());
}

void force_backend(Backend b) {
  if (!backend_supported(b))
    throw std::invalid_argument("vecops: backend " + backend_name(b) +
                                " not supported on this machine");
  g_backend = b;
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_sizes(a, b);
  return impl_for(g_backend).dot(a.data(), b.data(), a.size());
}

double sqdist(std::span<const double> a, std::span<const double> b) {
  check_sizes(a, b);
  return impl_for(g_backend).sqdist(a.data(), b.data(), a.size());
}

double sum(std::span<const double> a) {
  return impl_for(g_backend).sum(a.data(), a.size());
}

double sumsq(std::span<const double> a) {
  return impl_for(g_backend).sumsq(a.data(), a.size());
}

}  // namespace continuo::vecops
