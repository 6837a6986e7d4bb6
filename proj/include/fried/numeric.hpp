#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "fried/errors.hpp"

namespace fried {

using cplx = std::complex<double>;

/// Neumaier-compensated accumulator.
template <typename T>
class CompensatedSum;

template <>
class CompensatedSum<double> {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <>
class CompensatedSum<cplx> {
 public:
  void add(cplx x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

/// Resolves a worker count of 0 to the hardware concurrency.
inline unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

/// Sum of term(i) for i in [0, n).
///
/// Indices are cut into blocks of a fixed size, each block is summed with
/// compensation in index order, and block totals are combined by a pairwise
/// tree whose shape depends only on n. The result is therefore bit-identical
/// for any worker count.
template <typename T, typename Term>
T deterministic_sum(std::size_t n, Term&& term, unsigned workers = 0,
                    std::size_t block = 4096) {
  if (n == 0) return T{};
  const std::size_t nblocks = (n + block - 1) / block;
  std::vector<T> partial(nblocks);
  auto run_block = [&](std::size_t b) {
    CompensatedSum<T> acc;
    const std::size_t lo = b * block;
    const std::size_t hi = std::min(n, lo + block);
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
    partial[b] = acc.value();
  };
  const unsigned w = std::min<std::size_t>(resolve_workers(workers), nblocks);
  if (w <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned t = 0; t < w; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t b = t; b < nblocks; b += w) run_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (std::size_t stride = 1; stride < nblocks; stride *= 2) {
    for (std::size_t i = 0; i + stride < nblocks; i += 2 * stride) {
      partial[i] += partial[i + stride];
    }
  }
  return partial[0];
}

/// Runs body(i) for i in [0, n) over a fixed interleaved partition.
template <typename Body>
void parallel_for(std::size_t n, Body&& body, unsigned workers = 0) {
  const unsigned w = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(n, 1));
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += w) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Checked 64-bit arithmetic. Every exact integer quantity in the library
// (matrix powers, determinants, residue numerators) stays inside int64_t.
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("int64 overflow in multiplication");
  return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw CapacityError("int64 overflow in addition");
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw CapacityError("int64 overflow in subtraction");
  return r;
}

/// Non-negative residue of a modulo m (m > 0).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// (a * b + c * d) mod m without overflow for |a|,|b|,|c|,|d| < 2^62.
inline std::int64_t mul_add_mod(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                                std::int64_t m) {
  const __int128 v = static_cast<__int128>(a) * b + static_cast<__int128>(c) * d;
  __int128 r = v % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace fried
