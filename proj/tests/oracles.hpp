// Independent reference implementations used as test oracles. These
// deliberately avoid the library's computation paths: brute-force scans,
// term-by-term re-summation, explicit normal equations.
#ifndef CURVEFACE_TESTS_ORACLES_HPP
#define CURVEFACE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "curveface/image.hpp"

namespace oracles {

using curveface::GrayImage;

inline GrayImage random_image(int w, int h, uint64_t seed, double lo = 0.0, double hi = 255.0) {
    GrayImage img(w, h);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    for (auto& v : img.data) v = d(rng);
    return img;
}

// median by full sort of the clamped window
inline double median_at(const GrayImage& img, int x, int y, int radius) {
    std::vector<double> w;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx) {
            int xx = std::clamp(x + dx, 0, img.width - 1);
            int yy = std::clamp(y + dy, 0, img.height - 1);
            w.push_back(img.at(xx, yy));
        }
    std::sort(w.begin(), w.end());
    return w[w.size() / 2];
}

// direct bilinear formula at one output pixel (half-pixel-center convention)
inline double bilinear_at(const GrayImage& img, int ox, int oy, int ow, int oh) {
    double sx = double(img.width) / ow, sy = double(img.height) / oh;
    double fx = (ox + 0.5) * sx - 0.5, fy = (oy + 0.5) * sy - 0.5;
    int x0 = int(std::floor(fx)), y0 = int(std::floor(fy));
    double tx = fx - x0, ty = fy - y0;
    auto px = [&](int x, int y) {
        return img.at(std::clamp(x, 0, img.width - 1), std::clamp(y, 0, img.height - 1));
    };
    return (px(x0, y0) * (1 - tx) + px(x0 + 1, y0) * tx) * (1 - ty) +
           (px(x0, y0 + 1) * (1 - tx) + px(x0 + 1, y0 + 1) * tx) * ty;
}

}  // namespace oracles

#endif
