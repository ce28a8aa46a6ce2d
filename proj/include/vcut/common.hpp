#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcut {

using i64 = long long;
// capacities and flows, in units of the scaling unit
using Cap = __int128;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : Error { using Error::Error; };
struct InvariantError : Error { using Error::Error; };
struct OverflowError : Error { using Error::Error; };
struct SizeLimitError : Error { using Error::Error; };
struct NoCutError : Error { using Error::Error; };
struct NoCandidateError : Error { using Error::Error; };
struct CompleteGraphError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };

inline Cap add_checked(Cap a, Cap b) {
    Cap r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("capacity addition overflow");
    return r;
}

inline Cap mul_checked(Cap a, Cap b) {
    Cap r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("capacity multiplication overflow");
    return r;
}

inline Cap pow2(int e) {
    if (e < 0 || e > 125) throw OverflowError("power of two out of range");
    return Cap(1) << e;
}

// floor(log2 x) for x > 0, -1 for x <= 0
inline int floor_log2(Cap x) {
    if (x <= 0) return -1;
    unsigned __int128 u = (unsigned __int128)x;
    uint64_t hi = (uint64_t)(u >> 64), lo = (uint64_t)u;
    if (hi) return 127 - __builtin_clzll(hi);
    return 63 - __builtin_clzll(lo);
}

inline int ceil_log2(Cap x) {
    int f = floor_log2(x);
    return (x == pow2(f)) ? f : f + 1;
}

inline bool is_pow2(Cap x) { return x > 0 && (x & (x - 1)) == 0; }

std::string to_string(Cap x);

// log base 2, clamped below at 1 so that products of logs never vanish
double lg(double x);

// Deterministic PRNG substream keyed by a master seed and a tuple of counters.
std::mt19937_64 substream(uint64_t seed, std::initializer_list<uint64_t> keys);

// stream tags
enum : uint64_t {
    TAG_ALG1 = 1, TAG_ALG2 = 2, TAG_TERMINALS = 3, TAG_SUBROUTINE = 4, TAG_ORACLE = 5,
    TAG_ALG3 = 6, TAG_GEN = 7, TAG_HEAVY = 8, TAG_SHORTCUT = 9, TAG_DIRECTED = 10,
};

}  // namespace vcut
