#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dp5 {

using i64 = long long;
using i128 = __int128;
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Checked int64 arithmetic. Engine loop bounds are proven small enough that
// these never fire, but a silent wrap would corrupt an exact count.
inline i64 add_ck(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("add_ck");
  return r;
}
inline i64 sub_ck(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("sub_ck");
  return r;
}
inline i64 mul_ck(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("mul_ck");
  return r;
}

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string to_string_i128(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  std::string s;
  while (u) {
    s.push_back(char('0' + int(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

// floor(sqrt(v)), v >= 0
inline i128 isqrt128(i128 v) {
  if (v < 0) throw std::domain_error("isqrt128: negative");
  if (v == 0) return 0;
  i128 x = (i128)std::sqrt((long double)v);
  if (x < 1) x = 1;
  while (x > 1 && x * x > v) --x;
  while ((x + 1) * (x + 1) <= v) ++x;
  return x;
}

inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

inline i64 mod_floor(i64 a, i64 b) {
  i64 r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

// FNV-1a, used for the height-spec content hash in CSV/JSON provenance.
inline uint64_t fnv1a(const std::string& s, uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline unsigned worker_count() {
  if (const char* env = std::getenv("DP5_WORKERS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return (unsigned)n;
  }
  unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

// Run fn(k) for k in [0, jobs) on up to worker_count() threads.
template <class F>
void parallel_for_jobs(std::size_t jobs, F fn) {
  std::size_t nw = std::min<std::size_t>(worker_count(), jobs);
  if (nw <= 1) {
    for (std::size_t k = 0; k < jobs; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (std::size_t t = 0; t < nw; ++t)
    pool.emplace_back([&] {
      while (true) {
        std::size_t k = next.fetch_add(1);
        if (k >= jobs) return;
        fn(k);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace dp5
