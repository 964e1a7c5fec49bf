#ifndef CURVEFACE_FDCT_HPP
#define CURVEFACE_FDCT_HPP

#include <memory>
#include <string>

#include "curveface/image.hpp"

namespace curveface {

enum class FinestScale { kWavelets, kCurvelets };

struct TransformConfig {
    int nscales = 5;
    int nangles_coarse = 8;   // orientations at the second-coarsest scale, multiple of 4
    FinestScale finest = FinestScale::kWavelets;

    bool operator==(const TransformConfig&) const = default;
};

struct Subband {
    int scale = 0;         // 0 = coarsest approximation band
    int orientation = 0;   // wedge index within the scale
    Array2D<cplx> data;
};

struct CurveletCoeffs {
    TransformConfig config;
    int width = 0;
    int height = 0;
    std::vector<Subband> bands;   // coarse -> fine; orientation order within scale

    std::size_t total_coefficients() const;
};

struct WedgeShape {
    int scale = 0;
    int orientation = 0;
    int rows = 0;
    int cols = 0;
};

struct WedgeWindow {
    int scale = 0;
    int orientation = 0;
    // effective window on the image frequency grid (centered layout);
    // squared values over all wedges sum to 1 at every sample
    Array2D<double> values;
};

// Number of wedges at a scale: 1 at the coarsest; nangles_coarse * 2^ceil((s-1)/2)
// at curvelet scales s >= 1; 1 at the finest scale when it holds wavelets.
int wedge_count_at_scale(int scale, const TransformConfig& cfg);

// Meyer-type smooth step s(t) = t^4 (35 - 84 t + 70 t^2 - 20 t^3), clamped to [0,1].
double meyer_step(double t);

// Complementary window pair: wl rises 0 -> 1 over [0,1], wr falls 1 -> 0,
// wl^2 + wr^2 = 1 everywhere.
void wedge_window_pair(double t, double& wl, double& wr);

// Continuous-domain window surfaces (frequency in cycles; scale j = 0 is the
// first detail corona). Used by the partition property checks.
double lowpass_phi(double w1, double w2);                       // φ_0
double radial_window(int j, double w1, double w2);              // W_j = sqrt(φ²_{j+1} − φ²_j)
double angular_window(int j, int l, double w1, double w2, const TransformConfig& cfg);

// Precomputed transform plan for one image geometry. The plan flattens the
// recursive coronization into per-wedge gather maps: each wedge stores
// (source frequency sample, wrapped position, window weight) triples, so the
// forward transform is one FFT plus a gather + per-wedge inverse FFT, and the
// inverse is the exact adjoint.
class FdctPlan {
public:
    FdctPlan(int height, int width, const TransformConfig& cfg);
    ~FdctPlan();
    FdctPlan(const FdctPlan&) = delete;
    FdctPlan& operator=(const FdctPlan&) = delete;

    const TransformConfig& config() const { return cfg_; }
    int height() const { return height_; }
    int width() const { return width_; }

    const std::vector<WedgeShape>& shapes() const { return shapes_; }
    std::size_t total_coefficients() const;

    CurveletCoeffs forward(const GrayImage& img) const;
    GrayImage inverse(const CurveletCoeffs& coeffs) const;

    // sum of squared effective window weights per original frequency sample;
    // exactly 1 everywhere for a tight frame
    Array2D<double> tiling_sum_squares() const;
    WedgeWindow cartesian_window(int scale, int orientation) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    TransformConfig cfg_;
    int height_ = 0;
    int width_ = 0;
    std::vector<WedgeShape> shapes_;
};

// Convenience entry points backed by a process-wide plan cache.
CurveletCoeffs fdct_forward(const GrayImage& img, const TransformConfig& cfg);
GrayImage fdct_inverse(const CurveletCoeffs& coeffs);
const FdctPlan& fdct_plan_for(int height, int width, const TransformConfig& cfg);

// Independent tiling-shape audit: wedge shapes derived by plain arithmetic on
// the corona/endpoint geometry, with no window or plan machinery. The
// structural acceptance check compares these against the transform output.
std::vector<WedgeShape> audit_wedge_shapes(int height, int width, const TransformConfig& cfg);
std::size_t audit_total_coefficients(int height, int width, const TransformConfig& cfg);

// Coefficient dump: header (dims, config, per-wedge shapes) + row-major
// complex doubles per wedge. Native little-endian doubles.
void write_coeffs(const CurveletCoeffs& coeffs, const std::string& path);
CurveletCoeffs read_coeffs(const std::string& path);

}  // namespace curveface

#endif
