#include "vcut/common.hpp"

#include <algorithm>
#include <cmath>

namespace vcut {

std::string to_string(Cap x) {
    if (x == 0) return "0";
    bool neg = x < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-(x + 1)) + 1 : (unsigned __int128)x;
    std::string s;
    while (u) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

double lg(double x) { return std::max(1.0, std::log2(x)); }

std::mt19937_64 substream(uint64_t seed, std::initializer_list<uint64_t> keys) {
    std::vector<uint32_t> words;
    words.reserve(2 + 2 * keys.size());
    words.push_back(uint32_t(seed));
    words.push_back(uint32_t(seed >> 32));
    for (uint64_t k : keys) {
        words.push_back(uint32_t(k));
        words.push_back(uint32_t(k >> 32));
    }
    std::seed_seq sq(words.begin(), words.end());
    return std::mt19937_64(sq);
}

}  // namespace vcut
