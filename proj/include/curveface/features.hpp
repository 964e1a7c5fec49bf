#ifndef CURVEFACE_FEATURES_HPP
#define CURVEFACE_FEATURES_HPP

#include <string>

#include "curveface/fdct.hpp"

namespace curveface {

// 8x8 blocks of a real subband, zero-padded to multiples of the block size.
struct BlockGrid {
    int source_rows = 0;
    int source_cols = 0;
    int block = 8;
    int padded_rows = 0;
    int padded_cols = 0;
    std::vector<Array2D<double>> blocks;  // row-major block order
};

struct BlockStats {
    double mean = 0.0;
    double variance = 0.0;  // sample variance (n-1); Table 1 fixes this convention
    double stddev = 0.0;
    double entropy = 0.0;   // Shannon, 256 uniform bins over [lo, hi], log base 2
};

using FeatureVector = std::vector<double>;

Array2D<double> subband_to_real(const Array2D<cplx>& wedge);

BlockGrid partition_blocks(const Array2D<double>& band, int block = 8);

BlockStats block_stats(const Array2D<double>& block, double hist_lo, double hist_hi);

// For every subband (coarse -> fine, orientation order): magnitude ->
// 8x8 blocks -> (mean, variance, std, entropy) appended in block order.
// Histogram range per subband = (min, max) of that subband's magnitudes.
FeatureVector extract_features(const CurveletCoeffs& coeffs);

// Expected feature length from the tiling-shape audit alone.
std::size_t audit_feature_length(int height, int width, const TransformConfig& cfg,
                                 int block = 8);

void write_features(const FeatureVector& v, const std::string& path);
FeatureVector read_features(const std::string& path);
void write_features_csv(const FeatureVector& v, const std::string& path);

}  // namespace curveface

#endif
