// Composite midpoint rule for f(x)_i = x + i - 1 under four call styles.
//
// The vector size N is a template parameter, as with a fixed-size field
// vector; run() dispatches a runtime N in [1, kMaxComponents] to the
// matching instantiation.  All variants accumulate component-wise in
// ascending k and divide by n at the end, so their results are bitwise equal.
#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>

namespace gridfunc_bench {

constexpr int kMaxComponents = 32;

template <int N>
using Vec = std::array<double, N>;

template <int N>
struct Integrand {
  Vec<N> operator()(double x) const {
    Vec<N> y;
    for (int i = 0; i < N; ++i) y[i] = x + double(i);
    return y;
  }

  void evaluate(const double& x, Vec<N>& y) const {
    for (int i = 0; i < N; ++i) y[i] = x + double(i);
  }
};

template <class Domain, class Range>
struct VirtualFunction {
  virtual ~VirtualFunction() = default;
  virtual void evaluate(const Domain& x, Range& y) const = 0;
};

template <int N>
struct VirtualIntegrand final : VirtualFunction<double, Vec<N>> {
  void evaluate(const double& x, Vec<N>& y) const override {
    for (int i = 0; i < N; ++i) y[i] = x + double(i);
  }
};

// Built out of line so the call sites only see the erased/abstract type.
template <int N>
__attribute__((noinline)) std::function<Vec<N>(double)> make_erased() {
  return Integrand<N>();
}

template <int N>
__attribute__((noinline)) std::unique_ptr<VirtualFunction<double, Vec<N>>> make_virtual() {
  return std::make_unique<VirtualIntegrand<N>>();
}

template <int N>
inline void finish(const Vec<N>& acc, long n, double* out) {
  for (int i = 0; i < N; ++i) out[i] = acc[i] / double(n);
}

template <int N>
void run_a(long n, double* out) {
  const Integrand<N> f;
  Vec<N> acc{};
  for (long k = 0; k < n; ++k) {
    const double x = (double(k) + 0.5) / double(n);
    const Vec<N> y = f(x);
    for (int i = 0; i < N; ++i) acc[i] += y[i];
  }
  finish<N>(acc, n, out);
}

template <int N>
void run_b(long n, double* out) {
  const Integrand<N> f;
  Vec<N> acc{};
  Vec<N> y;
  for (long k = 0; k < n; ++k) {
    const double x = (double(k) + 0.5) / double(n);
    f.evaluate(x, y);
    for (int i = 0; i < N; ++i) acc[i] += y[i];
  }
  finish<N>(acc, n, out);
}

template <int N>
void run_c(long n, double* out) {
  const std::function<Vec<N>(double)> f = make_erased<N>();
  Vec<N> acc{};
  for (long k = 0; k < n; ++k) {
    const double x = (double(k) + 0.5) / double(n);
    const Vec<N> y = f(x);
    for (int i = 0; i < N; ++i) acc[i] += y[i];
  }
  finish<N>(acc, n, out);
}

template <int N>
void run_d(long n, double* out) {
  const auto owner = make_virtual<N>();
  const VirtualFunction<double, Vec<N>>& f = *owner;
  Vec<N> acc{};
  Vec<N> y;
  for (long k = 0; k < n; ++k) {
    const double x = (double(k) + 0.5) / double(n);
    f.evaluate(x, y);
    for (int i = 0; i < N; ++i) acc[i] += y[i];
  }
  finish<N>(acc, n, out);
}

template <int N>
bool run_fixed(char variant, long n, double* out) {
  switch (variant) {
    case 'a': run_a<N>(n, out); return true;
    case 'b': run_b<N>(n, out); return true;
    case 'c': run_c<N>(n, out); return true;
    case 'd': run_d<N>(n, out); return true;
    default: return false;
  }
}

template <int N>
bool dispatch(int components, char variant, long n, double* out) {
  if (components == N) return run_fixed<N>(variant, n, out);
  if constexpr (N < kMaxComponents) {
    return dispatch<N + 1>(components, variant, n, out);
  } else {
    return false;
  }
}

// Returns false for an unknown variant or a size outside [1, kMaxComponents].
inline bool run(char variant, int components, long n, double* out) {
  if (components < 1 || components > kMaxComponents || n < 1) return false;
  return dispatch<1>(components, variant, n, out);
}

}  // namespace gridfunc_bench
