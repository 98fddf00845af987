#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace continuo::vecops {

/// Dense double-precision kernels behind the Gram computations. A scalar
/// reference implementation is always available; an AVX2 variant is selected
/// at startup when the build and the CPU support it.
enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_supported(Backend b);

/// Overrides dispatch, mainly for equivalence tests. Throws
/// std::invalid_argument if the backend is not supported on this machine.
/// Not safe to call while other threads run vector kernels.
void force_backend(Backend b);

std::string backend_name(Backend b);

double dot(std::span<const double> a, std::span<const double> b);
double sqdist(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
double sumsq(std::span<const double> a);

namespace detail {

// Scalar references. Tests compare the dispatched kernels against these.
double dot_scalar(const double* a, const double* b, std::size_t n);
double sqdist_scalar(const double* a, const double* b, std::size_t n);
double sum_scalar(const double* a, std::size_t n);
double sumsq_scalar(const double* a, std::size_t n);

// Defined in vecops_avx2.cpp, compiled only on x86-64 builds.
double dot_avx2(const double* a, const double* b, std::size_t n);
double sqdist_avx2(const double* a, const double* b, std::size_t n);
double sum_avx2(const double* a, std::size_t n);
double sumsq_avx2(const double* a, std::size_t n);

}  // namespace detail

}  // namespace continuo::vecops
