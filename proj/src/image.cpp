#include "curveface/image.hpp"

#include <algorithm>
#include <cmath>

namespace curveface {

GrayImage rgb_to_gray(const RgbImage& img) {
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] = (img.r[i] + img.g[i] + img.b[i]) / 3.0;
    return out;
}

GrayImage median_filter(const GrayImage& img, int radius) {
    require(radius >= 0, "median_filter: radius must be >= 0");
    if (radius == 0) return img;
    GrayImage out(img.width, img.height);
    std::vector<double> window;
    window.reserve(std::size_t(2 * radius + 1) * (2 * radius + 1));
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            window.clear();
            for (int dy = -radius; dy <= radius; ++dy) {
                int yy = clampi(y + dy, 0, img.height - 1);
                for (int dx = -radius; dx <= radius; ++dx) {
                    int xx = clampi(x + dx, 0, img.width - 1);
                    window.push_back(img.at(xx, yy));
                }
            }
            std::size_t mid = window.size() / 2;
            std::nth_element(window.begin(), window.begin() + mid, window.end());
            out.at(x, y) = window[mid];
        }
    }
    return out;
}

GrayImage crop(const GrayImage& img, const CropRect& rect) {
    require(rect.w >= 1 && rect.h >= 1, "crop: empty rectangle");
    require(rect.x >= 0 && rect.y >= 0 &&
                rect.x + rect.w <= img.width && rect.y + rect.h <= img.height,
            "crop: rectangle outside image");
    GrayImage out(rect.w, rect.h);
    for (int y = 0; y < rect.h; ++y)
        for (int x = 0; x < rect.w; ++x)
            out.at(x, y) = img.at(rect.x + x, rect.y + y);
    return out;
}

GrayImage resize_to(const GrayImage& img, int w, int h) {
    require(w >= 1 && h >= 1, "resize_to: target dims must be >= 1");
    require(img.width >= 1 && img.height >= 1, "resize_to: empty source");
    if (w == img.width && h == img.height) return img;
    GrayImage out(w, h);
    double sx = double(img.width) / w;
    double sy = double(img.height) / h;
    for (int y = 0; y < h; ++y) {
        double fy = (y + 0.5) * sy - 0.5;
        int y0 = int(std::floor(fy));
        double ty = fy - y0;
        int ya = clampi(y0, 0, img.height - 1);
        int yb = clampi(y0 + 1, 0, img.height - 1);
        for (int x = 0; x < w; ++x) {
            double fx = (x + 0.5) * sx - 0.5;
            int x0 = int(std::floor(fx));
            double tx = fx - x0;
            int xa = clampi(x0, 0, img.width - 1);
            int xb = clampi(x0 + 1, 0, img.width - 1);
            double top = img.at(xa, ya) * (1 - tx) + img.at(xb, ya) * tx;
            double bot = img.at(xa, yb) * (1 - tx) + img.at(xb, yb) * tx;
            out.at(x, y) = top * (1 - ty) + bot * ty;
        }
    }
    return out;
}

GrayImage normalize_to_gray(const std::vector<double>& values, int width, int height) {
    require(values.size() == std::size_t(width) * height, "normalize_to_gray: size mismatch");
    double lo = values.empty() ? 0.0 : values[0];
    double hi = lo;
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    GrayImage out(width, height);
    if (hi - lo < 1e-12) return out;
    double s = 255.0 / (hi - lo);
    for (std::size_t i = 0; i < values.size(); ++i)
        out.data[i] = (values[i] - lo) * s;
    return out;
}

}  // namespace curveface
