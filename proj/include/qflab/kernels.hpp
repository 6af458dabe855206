#pragma once

#include <cstddef>
#include <limits>
#include <type_traits>
#include <utility>
#include <vector>

#include "qflab/common.hpp"

namespace qflab {

// Execution mode for the cell-parallel kernels. Parallel uses OpenMP when
// compiled in; Serial runs the same blocked algorithms on one thread.
// Reductions are blocked with a fixed chunk size and accumulated in chunk
// order, so results are bit-identical across modes and thread counts.
enum class ExecMode { Serial, Parallel };

ExecMode exec_mode();
void set_exec_mode(ExecMode m);
int hardware_threads();

inline constexpr std::size_t kReduceChunk = 4096;

namespace detail {
void run_indexed(std::size_t n, void* ctx, void (*body)(void*, std::size_t));
}

template <class F>
void par_for(std::size_t n, F&& f) {
  using Fn = std::remove_reference_t<F>;
  auto thunk = [](void* ctx, std::size_t i) { (*static_cast<Fn*>(ctx))(i); };
  detail::run_indexed(n, &f, thunk);
}

// Deterministic blocked sum: chunk partials in index order.
template <class T, class F>
T block_sum(std::size_t n, F&& f) {
  if (n == 0) return T{};
  std::size_t nchunks = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<T> partial(nchunks, T{});
  auto body = [&](std::size_t c) {
    std::size_t lo = c * kReduceChunk;
    std::size_t hi = lo + kReduceChunk < n ? lo + kReduceChunk : n;
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += f(i);
    partial[c] = acc;
  };
  par_for(nchunks, body);
  T total{};
  for (std::size_t c = 0; c < nchunks; ++c) total += partial[c];
  return total;
}

// Plain left-to-right loop, kept as the serial reference for the blocked sum.
template <class T, class F>
T reference_sum(std::size_t n, F&& f) {
  T acc{};
  for (std::size_t i = 0; i < n; ++i) acc += f(i);
  return acc;
}

// Deterministic min over f(i): value with the smallest index attaining it.
template <class F>
std::pair<double, std::size_t> block_min(std::size_t n, F&& f) {
  std::size_t nchunks = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<std::pair<double, std::size_t>> partial(
      nchunks, {std::numeric_limits<double>::infinity(), 0});
  auto body = [&](std::size_t c) {
    std::size_t lo = c * kReduceChunk;
    std::size_t hi = lo + kReduceChunk < n ? lo + kReduceChunk : n;
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = lo;
    for (std::size_t i = lo; i < hi; ++i) {
      double v = f(i);
      if (v < best) {
        best = v;
        arg = i;
      }
    }
    partial[c] = {best, arg};
  };
  par_for(nchunks, body);
  std::pair<double, std::size_t> out{std::numeric_limits<double>::infinity(), 0};
  for (auto& p : partial)
    if (p.first < out.first) out = p;
  return out;
}

template <class F>
std::pair<double, std::size_t> block_max(std::size_t n, F&& f) {
  auto neg = [&](std::size_t i) { return -f(i); };
  auto r = block_min(n, neg);
  return {-r.first, r.second};
}

}  // namespace qflab
