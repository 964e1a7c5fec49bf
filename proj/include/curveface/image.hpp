#ifndef CURVEFACE_IMAGE_HPP
#define CURVEFACE_IMAGE_HPP

#include "curveface/common.hpp"

namespace curveface {

// Row-major grayscale raster with real intensities in [0, 255].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    GrayImage() = default;
    GrayImage(int w, int h, double fill = 0.0)
        : width(w), height(h), data(std::size_t(w) * h, fill) {}

    double& at(int x, int y) { return data[std::size_t(y) * width + x]; }
    double at(int x, int y) const { return data[std::size_t(y) * width + x]; }
    std::size_t size() const { return data.size(); }
};

struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<double> r, g, b;

    RgbImage() = default;
    RgbImage(int w, int h)
        : width(w), height(h),
          r(std::size_t(w) * h, 0.0), g(std::size_t(w) * h, 0.0), b(std::size_t(w) * h, 0.0) {}

    std::size_t idx(int x, int y) const { return std::size_t(y) * width + x; }
};

struct CropRect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
};

GrayImage rgb_to_gray(const RgbImage& img);

// Median of the (2r+1)^2 window around each pixel, borders by coordinate
// clamping. radius 0 returns the input unchanged.
GrayImage median_filter(const GrayImage& img, int radius = 1);

GrayImage crop(const GrayImage& img, const CropRect& rect);

// Bilinear resampling with the half-pixel-center convention
// (src = (dst + 0.5) * scale - 0.5, coordinates clamped).
GrayImage resize_to(const GrayImage& img, int w, int h);

// Min-max rescale to [0, 255]; constant images map to 0.
GrayImage normalize_to_gray(const std::vector<double>& values, int width, int height);

}  // namespace curveface

#endif
