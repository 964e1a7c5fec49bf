#ifndef CURVEFACE_COMMON_HPP
#define CURVEFACE_COMMON_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace curveface {

using cplx = std::complex<double>;

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

[[noreturn]] inline void fail(const std::string& msg) {
    throw std::runtime_error(msg);
}

template <typename T>
struct Array2D {
    int rows = 0;
    int cols = 0;
    std::vector<T> v;

    Array2D() = default;
    Array2D(int r, int c, T init = T{}) : rows(r), cols(c), v(std::size_t(r) * c, init) {}

    T& operator()(int r, int c) { return v[std::size_t(r) * cols + c]; }
    const T& operator()(int r, int c) const { return v[std::size_t(r) * cols + c]; }
    std::size_t size() const { return v.size(); }
    bool same_shape(const Array2D& o) const { return rows == o.rows && cols == o.cols; }
};

// MATLAB-style rounding (half away from zero); the tick geometry in the
// curvelet tiling depends on it.
inline int iround(double x) { return int(std::floor(x + 0.5)); }

inline int clampi(int x, int lo, int hi) { return x < lo ? lo : (x > hi ? hi : x); }

}  // namespace curveface

#endif
