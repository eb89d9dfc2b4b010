#ifndef ATTRACTOR_COMMON_HPP
#define ATTRACTOR_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace attractor {

// Library errors carry a stable machine-readable code (e.g. "position-out-of-range")
// next to the human-readable message. The CLI surfaces the code verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    return (a + b - 1) / b;
}

// smallest k with 2^k >= x, for x >= 1
inline int ceil_log2(std::int64_t x) {
    int k = 0;
    std::int64_t v = 1;
    while (v < x) { v <<= 1; ++k; }
    return k;
}

// largest k with 2^k <= x, for x >= 1
inline int floor_log2(std::int64_t x) {
    int k = 0;
    while ((std::int64_t{1} << (k + 1)) <= x) ++k;
    return k;
}

inline std::int64_t floor_pow2(std::int64_t x) {
    return std::int64_t{1} << floor_log2(x);
}

}  // namespace attractor

#endif
