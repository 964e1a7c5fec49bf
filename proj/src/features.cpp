#include "curveface/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace curveface {

Array2D<double> subband_to_real(const Array2D<cplx>& wedge) {
    Array2D<double> out(wedge.rows, wedge.cols);
    for (std::size_t i = 0; i < wedge.size(); ++i) out.v[i] = std::abs(wedge.v[i]);
    return out;
}

BlockGrid partition_blocks(const Array2D<double>& band, int block) {
    require(band.rows >= 1 && band.cols >= 1, "partition_blocks: empty band");
    require(block >= 1, "partition_blocks: block size must be >= 1");
    BlockGrid g;
    g.source_rows = band.rows;
    g.source_cols = band.cols;
    g.block = block;
    g.padded_rows = ((band.rows + block - 1) / block) * block;
    g.padded_cols = ((band.cols + block - 1) / block) * block;
    int br = g.padded_rows / block, bc = g.padded_cols / block;
    g.blocks.reserve(std::size_t(br) * bc);
    for (int by = 0; by < br; ++by)
        for (int bx = 0; bx < bc; ++bx) {
            Array2D<double> b(block, block, 0.0);
            for (int y = 0; y < block; ++y) {
                int sy = by * block + y;
                if (sy >= band.rows) break;
                for (int x = 0; x < block; ++x) {
                    int sx = bx * block + x;
                    if (sx >= band.cols) break;
                    b(y, x) = band(sy, sx);
                }
            }
            g.blocks.push_back(std::move(b));
        }
    return g;
}

BlockStats block_stats(const Array2D<double>& block, double hist_lo, double hist_hi) {
    require(hist_lo < hist_hi || (hist_lo == hist_hi), "block_stats: bad histogram range");
    std::size_t n = block.size();
    require(n >= 2, "block_stats: block too small");
    BlockStats s;
    double sum = 0.0;
    for (double v : block.v) sum += v;
    s.mean = sum / double(n);
    double ss = 0.0;
    for (double v : block.v) {
        double d = v - s.mean;
        ss += d * d;
    }
    s.variance = ss / double(n - 1);
    s.stddev = std::sqrt(s.variance);

    constexpr int kBins = 256;
    int counts[kBins] = {0};
    if (hist_hi - hist_lo < 1e-300) {
        counts[0] = int(n);
    } else {
        double scale = kBins / (hist_hi - hist_lo);
        for (double v : block.v) {
            int bin = int((v - hist_lo) * scale);
            counts[clampi(bin, 0, kBins - 1)]++;
        }
    }
    double e = 0.0;
    for (int c : counts) {
        if (c == 0) continue;
        double p = double(c) / double(n);
        e -= p * std::log2(p);
    }
    s.entropy = e;
    return s;
}

FeatureVector extract_features(const CurveletCoeffs& coeffs) {
    FeatureVector out;
    for (const auto& band : coeffs.bands) {
        Array2D<double> mag = subband_to_real(band.data);
        double lo = mag.v.empty() ? 0.0 : mag.v[0], hi = lo;
        for (double v : mag.v) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        BlockGrid g = partition_blocks(mag);
        for (const auto& b : g.blocks) {
            BlockStats s = block_stats(b, lo, hi);
            out.push_back(s.mean);
            out.push_back(s.variance);
            out.push_back(s.stddev);
            out.push_back(s.entropy);
        }
    }
    return out;
}

std::size_t audit_feature_length(int height, int width, const TransformConfig& cfg, int block) {
    std::size_t nblocks = 0;
    for (const auto& s : audit_wedge_shapes(height, width, cfg))
        nblocks += std::size_t((s.rows + block - 1) / block) * ((s.cols + block - 1) / block);
    return 4 * nblocks;
}

namespace {
constexpr uint32_t kFeatMagic = 0x43464656;  // "CFFV"
}

void write_features(const FeatureVector& v, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail("write_features: cannot open " + path);
    uint32_t magic = kFeatMagic;
    uint64_t n = v.size();
    f.write(reinterpret_cast<const char*>(&magic), sizeof magic);
    f.write(reinterpret_cast<const char*>(&n), sizeof n);
    f.write(reinterpret_cast<const char*>(v.data()), std::streamsize(n * sizeof(double)));
    if (!f) fail("write_features: write failed for " + path);
}

FeatureVector read_features(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail("read_features: cannot open " + path);
    uint32_t magic = 0;
    uint64_t n = 0;
    f.read(reinterpret_cast<char*>(&magic), sizeof magic);
    if (magic != kFeatMagic) fail("read_features: bad magic in " + path);
    f.read(reinterpret_cast<char*>(&n), sizeof n);
    if (n > (uint64_t(1) << 32)) fail("read_features: corrupt length in " + path);
    FeatureVector v(n);
    f.read(reinterpret_cast<char*>(v.data()), std::streamsize(n * sizeof(double)));
    if (!f) fail("read_features: truncated file " + path);
    return v;
}

void write_features_csv(const FeatureVector& v, const std::string& path) {
    std::ofstream f(path);
    if (!f) fail("write_features_csv: cannot open " + path);
    f.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) f << v[i] << (i + 1 < v.size() ? "\n" : "\n");
    if (!f) fail("write_features_csv: write failed for " + path);
}

}  // namespace curveface
