#include "curveface/fdct.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <tuple>

namespace curveface {

std::size_t CurveletCoeffs::total_coefficients() const {
    std::size_t n = 0;
    for (const auto& b : bands) n += b.data.size();
    return n;
}

int wedge_count_at_scale(int scale, const TransformConfig& cfg) {
    require(scale >= 0 && scale < cfg.nscales, "wedge_count_at_scale: scale out of range");
    if (scale == 0) return 1;
    if (scale == cfg.nscales - 1 && cfg.finest == FinestScale::kWavelets) return 1;
    int e = (scale - 1 + 1) / 2;  // ceil((scale-1)/2)
    return cfg.nangles_coarse << e;
}

double meyer_step(double t) {
    if (std::isnan(t)) return 0.0;
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double t2 = t * t;
    return t2 * t2 * (35.0 - 84.0 * t + 70.0 * t2 - 20.0 * t2 * t);
}

void wedge_window_pair(double t, double& wl, double& wr) {
    double s = meyer_step(t);
    wl = std::sin(0.5 * M_PI * s);
    wr = std::cos(0.5 * M_PI * s);
}

// ---------------------------------------------------------------------------
// continuous-domain windows (property-check surfaces)

namespace {

double phi_1d(double t) {
    double a = std::fabs(t);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    return std::cos(0.5 * M_PI * meyer_step(a - 1.0));
}

double phi_j(int j, double w1, double w2) {
    double s = std::ldexp(1.0, -j);  // 2^-j
    return phi_1d(w1 * s) * phi_1d(w2 * s);
}

}  // namespace

double lowpass_phi(double w1, double w2) { return phi_j(0, w1, w2); }

double radial_window(int j, double w1, double w2) {
    require(j >= 0, "radial_window: j must be >= 0");
    double a = phi_j(j + 1, w1, w2);
    double b = phi_j(j, w1, w2);
    double d = a * a - b * b;
    return d > 0.0 ? std::sqrt(d) : 0.0;
}

namespace {

// Pseudo-polar angular coordinate of (w1, w2) in quadrant q's frame,
// continued projectively past the +-45 degree diagonals. Returns false when
// the point is in the opposite half plane of the quadrant.
bool angular_coord(int q, double w1, double w2, double& u_ext) {
    double a, b;
    switch (q & 3) {
        case 0: a = w1;  b = w2;  break;   // east
        case 1: a = w2;  b = -w1; break;   // north
        case 2: a = -w1; b = -w2; break;   // west
        default: a = -w2; b = w1; break;   // south
    }
    if (a <= 0.0 && std::fabs(b) <= -a) return false;
    if (std::fabs(b) <= a) {
        u_ext = b / a;
    } else if (b > 0.0) {
        u_ext = 2.0 - a / b;
    } else {
        u_ext = -2.0 - a / (-b) * -1.0;  // == -2 + a/|b|
    }
    return true;
}

double raw_angular(int npq, int q, int k, double w1, double w2) {
    double u;
    if (!angular_coord(q, w1, w2, u)) return 0.0;
    if (npq == 1) return 1.0;
    double delta = 2.0 / (npq - 1);
    auto c = [&](int i) { return -1.0 + delta * i; };
    double wl, wr, wl2, wr2;
    if (k == 0) {
        wedge_window_pair((u + 1.0 + delta) / (2.0 * delta), wl, wr);
        wedge_window_pair((u + 1.0) / delta, wl2, wr2);
        return wl * wr2;
    }
    if (k == npq - 1) {
        wedge_window_pair((u - 1.0 + delta) / (2.0 * delta), wl, wr);
        wedge_window_pair((u - c(npq - 2)) / delta, wl2, wr2);
        return wr * wl2;
    }
    wedge_window_pair((u - c(k - 1)) / delta, wl, wr);
    wedge_window_pair((u - c(k)) / delta, wl2, wr2);
    return wl * wr2;
}

}  // namespace

double angular_window(int j, int l, double w1, double w2, const TransformConfig& cfg) {
    int count = wedge_count_at_scale(j, cfg);
    require(count >= 4, "angular_window: scale has a single undirected band");
    require(l >= 0 && l < count, "angular_window: orientation out of range");
    int npq = count / 4;
    double raw = raw_angular(npq, l / npq, l % npq, w1, w2);
    if (raw == 0.0) return 0.0;
    double sum = 0.0;
    for (int q = 0; q < 4; ++q)
        for (int k = 0; k < npq; ++k) {
            double v = raw_angular(npq, q, k, w1, w2);
            sum += v * v;
        }
    return raw / std::sqrt(sum);
}

// ---------------------------------------------------------------------------
// FFT machinery: centered unitary 2D transforms backed by FFTW

namespace {

class FftEngine {
public:
    static FftEngine& instance() {
        static FftEngine e;
        return e;
    }

    // out-of-place transform of a contiguous complex array
    void execute(int rows, int cols, int sign, const cplx* in, cplx* out) {
        fftw_plan p = plan_for(rows, cols, sign);
        fftw_execute_dft(p,
                         reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

private:
    FftEngine() = default;

    fftw_plan plan_for(int rows, int cols, int sign) {
        std::scoped_lock lk(mu_);
        auto key = std::make_tuple(rows, cols, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> a(std::size_t(rows) * cols), b(a.size());
        fftw_plan p = fftw_plan_dft_2d(rows, cols,
                                       reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()),
                                       sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) fail("fftw_plan_dft_2d failed");
        plans_.emplace(key, p);
        return p;
    }

    std::mutex mu_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

// y = fftshift(fft2(ifftshift(x))) / sqrt(N)  (sign = FFTW_FORWARD)
// y = fftshift(ifft2(ifftshift(x))) * sqrt(N) (sign = FFTW_BACKWARD; FFTW's
// backward transform is unnormalized, so both cases divide by sqrt(N))
Array2D<cplx> centered_fft2(const Array2D<cplx>& x, int sign) {
    int R = x.rows, C = x.cols;
    Array2D<cplx> tmp(R, C), out(R, C);
    int r0 = R / 2, c0 = C / 2;            // ifftshift offsets
    for (int r = 0; r < R; ++r) {
        int sr = (r + r0) % R;
        for (int c = 0; c < C; ++c) tmp(r, c) = x(sr, (c + c0) % C);
    }
    Array2D<cplx> ft(R, C);
    FftEngine::instance().execute(R, C, sign, tmp.v.data(), ft.v.data());
    int r1 = (R + 1) / 2, c1 = (C + 1) / 2; // fftshift offsets
    double scale = 1.0 / std::sqrt(double(R) * C);
    for (int r = 0; r < R; ++r) {
        int sr = (r + r1) % R;
        for (int c = 0; c < C; ++c) out(r, c) = ft(sr, (c + c1) % C) * scale;
    }
    return out;
}

template <typename T>
Array2D<T> rot90_ccw(const Array2D<T>& a) {
    Array2D<T> b(a.cols, a.rows);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) b(i, j) = a(j, a.cols - 1 - i);
    return b;
}

template <typename T>
Array2D<T> rot90(const Array2D<T>& a, int k) {
    Array2D<T> r = a;
    for (int i = 0; i < ((k % 4) + 4) % 4; ++i) r = rot90_ccw(r);
    return r;
}

int imod(int x, int m) { return ((x % m) + m) % m; }

// 1D lowpass profile: [rising tail, plateau, falling tail] (+ zero pad ends)
std::vector<double> lowpass_profile(int inner, int wl_len, bool pad_zero) {
    std::vector<double> left, right;
    int n = wl_len <= 0 ? 1 : wl_len + 1;   // degenerate window -> single point t=0
    for (int i = 0; i < n; ++i) {
        double t = wl_len <= 0 ? 0.0 : double(i) / wl_len;
        double wl, wr;
        wedge_window_pair(t, wl, wr);
        left.push_back(wl);
        right.push_back(wr);
    }
    std::vector<double> lp;
    if (pad_zero) lp.push_back(0.0);
    lp.insert(lp.end(), left.begin(), left.end());
    lp.insert(lp.end(), std::size_t(inner), 1.0);
    lp.insert(lp.end(), right.begin(), right.end());
    if (pad_zero) lp.push_back(0.0);
    return lp;
}

std::vector<int> wedge_endpoints_for(int F, int npq) {
    std::vector<int> E(npq);
    for (int k = 0; k < npq; ++k)
        E[k] = int(std::floor(2.0 * F * k / (npq - 1) + 0.5)) + 1;
    for (int k = 0; k < npq / 2; ++k) E[npq - 1 - k] = 2 * F + 2 - E[k];
    return E;
}

std::vector<int> nbangles_vector(const TransformConfig& cfg) {
    std::vector<int> nb(cfg.nscales + 1, 0);  // 1-based scale index, coarsest = 1
    nb[1] = 1;
    for (int j = 2; j <= cfg.nscales; ++j) nb[j] = wedge_count_at_scale(j - 1, cfg);
    return nb;
}

}  // namespace

// ---------------------------------------------------------------------------
// plan construction

namespace detail {
struct PlanWedge {
    int scale = 0;
    int orientation = 0;
    int rows = 0;
    int cols = 0;
    std::vector<int32_t> src;   // original-grid linear index
    std::vector<int32_t> dst;   // wrapped-array linear index
    std::vector<double> w;      // effective window weight
};
}  // namespace detail

struct FdctPlan::Impl {
    std::vector<detail::PlanWedge> wedges;   // coarse -> fine, orientation order within scale
};

namespace {

struct BuildGrid {
    Array2D<int32_t> orig;  // original frequency-grid linear index per cell
    Array2D<double> amp;    // accumulated radial amplitude per cell
};

void add_identity_wedge(std::vector<detail::PlanWedge>& out, int scale,
                        const BuildGrid& g) {
    detail::PlanWedge wd;
    wd.scale = scale;
    wd.rows = g.amp.rows;
    wd.cols = g.amp.cols;
    for (int r = 0; r < wd.rows; ++r)
        for (int c = 0; c < wd.cols; ++c) {
            double a = g.amp(r, c);
            if (a == 0.0) continue;
            wd.src.push_back(g.orig(r, c));
            wd.dst.push_back(int32_t(r) * wd.cols + c);
            wd.w.push_back(a);
        }
    out.push_back(std::move(wd));
}

void add_scale_wedges(std::vector<detail::PlanWedge>& out, int scale,
                      const BuildGrid& g, double M1, double M2, int nbangles_scale) {
    int npq = nbangles_scale / 4;
    require(npq >= 2, "fdct: nangles_coarse must give at least 2 wedges per quadrant");
    int G1 = g.amp.rows, G2 = g.amp.cols;

    struct Pending {
        int rows = 0, cols = 0;
        std::vector<int32_t> grid;  // scale-grid linear index (unrotated frame)
        std::vector<int32_t> dst;
        std::vector<double> win;
    };
    std::vector<Pending> pending;
    std::vector<double> sumsq(std::size_t(G1) * G2, 0.0);

    Array2D<int32_t> idx0(G1, G2);
    for (int r = 0; r < G1; ++r)
        for (int c = 0; c < G2; ++c) idx0(r, c) = int32_t(r) * G2 + c;

    for (int quadrant = 1; quadrant <= 4; ++quadrant) {
        double M_horiz = (quadrant % 2 == 1) ? M2 : M1;
        double M_vert = (quadrant % 2 == 1) ? M1 : M2;
        int F = int(std::floor(4 * M_horiz));
        int V = int(std::floor(4 * M_vert));
        std::vector<int> E = wedge_endpoints_for(F, npq);
        std::vector<double> mid(npq - 1);
        for (int i = 0; i + 1 < npq; ++i) mid[i] = 0.5 * (E[i] + E[i + 1]);

        int fwev = iround(2.0 * V / (2.0 * npq) + 1.0);
        int length_wedge = V - int(std::floor(M_vert));
        int length_corner = length_wedge + int(std::ceil(fwev / 4.0));

        Array2D<int32_t> idxq = rot90(idx0, quadrant - 1);

        int first_row_c = V + 2 - (length_corner + 2) / 2 +
                          ((length_corner + 1) % 2) * ((quadrant == 2 || quadrant == 3) ? 1 : 0);
        int first_row_r = V + 2 - (length_wedge + 2) / 2 +
                          ((length_wedge + 1) % 2) * ((quadrant == 2 || quadrant == 3) ? 1 : 0);

        // kind: 0 = left corner, 1 = interior, 2 = right corner
        auto emit = [&](int length, int width, const std::vector<int>& left_line,
                        int first_row, int kind, int center) {
            int first_col = F + 2 - (width + 2) / 2 +
                            ((width + 1) % 2) * ((quadrant == 3 || quadrant == 4) ? 1 : 0);
            Array2D<int32_t> wgrid(length, width, -1);
            Array2D<double> wXX(length, width, 0.0);
            Array2D<double> wYY(length, width, 0.0);
            Array2D<uint8_t> wmask(length, width, 0);
            for (int row = 1; row <= length; ++row) {
                int ll = left_line[row - 1];
                int new_row = imod(row - first_row, length);  // 0-based wrapped row
                for (int t = 0; t < width; ++t) {
                    int col = ll + imod(t - (ll - first_col), width);
                    int adm = clampi(col, 1, 2 * F + 1);
                    wgrid(new_row, t) = idxq(row - 1, adm - 1);
                    wXX(new_row, t) = col;
                    wYY(new_row, t) = row;
                    wmask(new_row, t) = (col >= 1 && col <= 2 * F + 1) ? 1 : 0;
                }
            }
            Array2D<double> win(length, width, 0.0);
            for (int r = 0; r < length; ++r)
                for (int c = 0; c < width; ++c) {
                    if (!wmask(r, c)) continue;
                    double XX = wXX(r, c), YY = wYY(r, c);
                    double value = 0.0;
                    if (kind == 0) {
                        double slope_r = (F + 1 - mid[0]) / V;
                        double mid_r = mid[0] + slope_r * (YY - 1);
                        double coord_r = 0.5 + V / double(E[1] - E[0]) * (XX - mid_r) / (V + 1 - YY);
                        double C2 = (E[0] == 1)
                                        ? 2.0 * V / (fwev - 1) - 1.0
                                        : 1.0 / (1.0 / (2.0 * F / double(E[0] - 1) - 1.0) +
                                                 1.0 / (2.0 * V / double(fwev - 1) - 1.0));
                        double C1 = C2 / (2.0 * V / double(fwev - 1) - 1.0);
                        double XXn = (XX - 1) / F, YYn = (YY - 1) / V;
                        if (XXn + YYn == 2.0) XXn = (XX + 1 - 1) / F;
                        double coord_c = C1 + C2 * (XXn - YYn) / (2.0 - (XXn + YYn));
                        double wl, wr, wl2, wr2;
                        wedge_window_pair(coord_c, wl, wr);
                        wedge_window_pair(coord_r, wl2, wr2);
                        value = wl * wr2;
                    } else if (kind == 2) {
                        double slope_l = (F + 1 - mid[npq - 2]) / V;
                        double mid_l = mid[npq - 2] + slope_l * (YY - 1);
                        double coord_l =
                            0.5 + V / double(E[npq - 1] - E[npq - 2]) * (XX - mid_l) / (V + 1 - YY);
                        double C2 = (E[npq - 1] == 2 * F + 1)
                                        ? -(2.0 * V / (fwev - 1) - 1.0)
                                        : -1.0 / (2.0 * F / double(E[npq - 1] - 1) - 1.0 +
                                                  1.0 / (2.0 * V / double(fwev - 1) - 1.0));
                        double C1 = -C2 * (2.0 * F / double(E[npq - 1] - 1) - 1.0);
                        double XXn = (XX - 1) / F, YYn = (YY - 1) / V;
                        if (XXn == YYn) XXn = (XX - 1 - 1) / F;
                        double coord_c = C1 + C2 * (2.0 - (XXn + YYn)) / (XXn - YYn);
                        double wl, wr, wl2, wr2;
                        wedge_window_pair(coord_l, wl, wr);
                        wedge_window_pair(coord_c, wl2, wr2);
                        value = wl * wr2;
                    } else {
                        int s = center;
                        double slope_l = (F + 1 - mid[s - 1]) / V;
                        double mid_l = mid[s - 1] + slope_l * (YY - 1);
                        double coord_l = 0.5 + V / double(E[s] - E[s - 1]) * (XX - mid_l) / (V + 1 - YY);
                        double slope_r = (F + 1 - mid[s]) / V;
                        double mid_r = mid[s] + slope_r * (YY - 1);
                        double coord_r = 0.5 + V / double(E[s + 1] - E[s]) * (XX - mid_r) / (V + 1 - YY);
                        double wl, wr, wl2, wr2;
                        wedge_window_pair(coord_l, wl, wr);
                        wedge_window_pair(coord_r, wl2, wr2);
                        value = wl * wr2;
                    }
                    if (!std::isfinite(value)) value = 0.0;
                    win(r, c) = value;
                }
            // coefficient array = rot90(wrapped, -(quadrant-1))
            Array2D<int32_t> wlin(length, width);
            for (int r = 0; r < length; ++r)
                for (int c = 0; c < width; ++c) wlin(r, c) = int32_t(r) * width + c;
            Array2D<int32_t> R = rot90(wlin, -(quadrant - 1));
            std::vector<int32_t> dst_of(std::size_t(length) * width);
            for (int r = 0; r < R.rows; ++r)
                for (int c = 0; c < R.cols; ++c) dst_of[R(r, c)] = int32_t(r) * R.cols + c;

            Pending p;
            p.rows = R.rows;
            p.cols = R.cols;
            p.grid.reserve(win.size());
            for (int r = 0; r < length; ++r)
                for (int c = 0; c < width; ++c) {
                    p.grid.push_back(wgrid(r, c));
                    p.dst.push_back(dst_of[std::size_t(r) * width + c]);
                    p.win.push_back(win(r, c));
                    sumsq[wgrid(r, c)] += win(r, c) * win(r, c);
                }
            pending.push_back(std::move(p));
        };

        // left corner wedge
        {
            int width = E[1] + E[0] - 1;
            double slope = (F + 1 - E[0]) / double(V);
            std::vector<int> ll(length_corner);
            for (int r = 0; r < length_corner; ++r) ll[r] = iround(2 - E[0] + slope * r);
            emit(length_corner, width, ll, first_row_c, 0, 0);
        }
        // interior wedges
        for (int s = 1; s + 1 < npq; ++s) {
            int width = E[s + 1] - E[s - 1] + 1;
            double slope = (F + 1 - E[s]) / double(V);
            std::vector<int> ll(length_wedge);
            for (int r = 0; r < length_wedge; ++r) ll[r] = iround(E[s - 1] + slope * r);
            emit(length_wedge, width, ll, first_row_r, 1, s);
        }
        // right corner wedge
        {
            int width = 4 * F + 3 - E[npq - 1] - E[npq - 2];
            double slope = (F + 1 - E[npq - 1]) / double(V);
            std::vector<int> ll(length_corner);
            for (int r = 0; r < length_corner; ++r) ll[r] = iround(E[npq - 2] + slope * r);
            emit(length_corner, width, ll, first_row_c, 2, 0);
        }
    }

    // exact partition: normalize the angular windows per grid point, then fold
    // in the radial amplitude and map to original-grid indices
    const auto& amp = g.amp;
    const auto& orig = g.orig;
    for (auto& p : pending) {
        detail::PlanWedge wd;
        wd.scale = scale;
        wd.rows = p.rows;
        wd.cols = p.cols;
        for (std::size_t i = 0; i < p.grid.size(); ++i) {
            int32_t gpos = p.grid[i];
            double s2 = sumsq[gpos];
            if (s2 <= 0.0) continue;
            double w = p.win[i] / std::sqrt(s2) * amp.v[gpos];
            if (w == 0.0) continue;
            wd.src.push_back(orig.v[gpos]);
            wd.dst.push_back(p.dst[i]);
            wd.w.push_back(w);
        }
        out.push_back(std::move(wd));
    }
}

}  // namespace

FdctPlan::FdctPlan(int height, int width, const TransformConfig& cfg)
    : cfg_(cfg), height_(height), width_(width) {
    require(cfg.nscales >= 2, "fdct: nscales must be >= 2");
    require(cfg.nangles_coarse >= 8 && cfg.nangles_coarse % 4 == 0,
            "fdct: nangles_coarse must be a multiple of 4, at least 8");
    require(height >= (1 << cfg.nscales) && width >= (1 << cfg.nscales),
            "fdct: image too small for requested scales");

    impl_ = std::make_unique<Impl>();
    
    const int N1 = height, N2 = width;
    std::vector<int> nb = nbangles_vector(cfg_);
    double M1 = N1 / 3.0, M2 = N2 / 3.0;

    BuildGrid g;
    int first_scale;  // 1-based CurveLab scale at which the corona loop starts
    std::vector<std::vector<detail::PlanWedge>> per_scale(cfg.nscales);

    if (cfg.finest == FinestScale::kCurvelets) {
        int big1 = 2 * int(std::floor(2 * M1)) + 1;
        int big2 = 2 * int(std::floor(2 * M2)) + 1;
        g.orig = Array2D<int32_t>(big1, big2);
        for (int r = 0; r < big1; ++r) {
            int er = imod(N1 / 2 - int(std::floor(2 * M1)) + r, N1);
            for (int c = 0; c < big2; ++c) {
                int ec = imod(N2 / 2 - int(std::floor(2 * M2)) + c, N2);
                g.orig(r, c) = int32_t(er) * N2 + ec;
            }
        }
        int wl1 = int(std::floor(2 * M1)) - int(std::floor(M1)) - 1 - (N1 % 3 == 0 ? 1 : 0);
        int wl2 = int(std::floor(2 * M2)) - int(std::floor(M2)) - 1 - (N2 % 3 == 0 ? 1 : 0);
        auto lp1 = lowpass_profile(2 * int(std::floor(M1)) + 1, wl1, N1 % 3 == 0);
        auto lp2 = lowpass_profile(2 * int(std::floor(M2)) + 1, wl2, N2 % 3 == 0);
        require(int(lp1.size()) == big1 && int(lp2.size()) == big2, "fdct: fold profile mismatch");
        g.amp = Array2D<double>(big1, big2);
        for (int r = 0; r < big1; ++r)
            for (int c = 0; c < big2; ++c) g.amp(r, c) = lp1[r] * lp2[c];
        first_scale = cfg.nscales;
    } else {
        g.orig = Array2D<int32_t>(N1, N2);
        g.amp = Array2D<double>(N1, N2, 1.0);
        for (int r = 0; r < N1; ++r)
            for (int c = 0; c < N2; ++c) g.orig(r, c) = int32_t(r) * N2 + c;
        M1 /= 2.0;
        M2 /= 2.0;
        int wl1 = int(std::floor(2 * M1)) - int(std::floor(M1)) - 1;
        int wl2 = int(std::floor(2 * M2)) - int(std::floor(M2)) - 1;
        auto lp1 = lowpass_profile(2 * int(std::floor(M1)) + 1, wl1, false);
        auto lp2 = lowpass_profile(2 * int(std::floor(M2)) + 1, wl2, false);
        int c1 = (N1 + 1 + 1) / 2 - 1;  // 0-based center, ceil((N+1)/2) - 1
        int c2 = (N2 + 1 + 1) / 2 - 1;
        int h1 = int(std::floor(2 * M1)), h2 = int(std::floor(2 * M2));
        BuildGrid hi = g;
        for (int r = 0; r <= 2 * h1; ++r)
            for (int c = 0; c <= 2 * h2; ++c) {
                double lp = lp1[r] * lp2[c];
                double hp = std::sqrt(std::max(0.0, 1.0 - lp * lp));
                hi.amp(c1 - h1 + r, c2 - h2 + c) *= hp;
            }
        add_identity_wedge(per_scale[cfg.nscales - 1], cfg.nscales - 1, hi);
        BuildGrid next;
        next.orig = Array2D<int32_t>(2 * h1 + 1, 2 * h2 + 1);
        next.amp = Array2D<double>(2 * h1 + 1, 2 * h2 + 1);
        for (int r = 0; r <= 2 * h1; ++r)
            for (int c = 0; c <= 2 * h2; ++c) {
                next.orig(r, c) = g.orig(c1 - h1 + r, c2 - h2 + c);
                next.amp(r, c) = g.amp(c1 - h1 + r, c2 - h2 + c) * lp1[r] * lp2[c];
            }
        g = std::move(next);
        first_scale = cfg.nscales - 1;
    }

    for (int j = first_scale; j >= 2; --j) {
        M1 /= 2.0;
        M2 /= 2.0;
        int wl1 = int(std::floor(2 * M1)) - int(std::floor(M1)) - 1;
        int wl2 = int(std::floor(2 * M2)) - int(std::floor(M2)) - 1;
        auto lp1 = lowpass_profile(2 * int(std::floor(M1)) + 1, wl1, false);
        auto lp2 = lowpass_profile(2 * int(std::floor(M2)) + 1, wl2, false);
        int G1 = 2 * int(std::floor(4 * M1)) + 1;
        int G2 = 2 * int(std::floor(4 * M2)) + 1;
        require(g.amp.rows == G1 && g.amp.cols == G2, "fdct: corona grid mismatch");
        int cc1 = int(std::floor(4 * M1));
        int cc2 = int(std::floor(4 * M2));
        int h1 = int(std::floor(2 * M1)), h2 = int(std::floor(2 * M2));
        BuildGrid hi = g;
        for (int r = 0; r <= 2 * h1; ++r)
            for (int c = 0; c <= 2 * h2; ++c) {
                double lp = lp1[r] * lp2[c];
                double hp = std::sqrt(std::max(0.0, 1.0 - lp * lp));
                hi.amp(cc1 - h1 + r, cc2 - h2 + c) *= hp;
            }
        add_scale_wedges(per_scale[j - 1], j - 1, hi, M1, M2, nb[j]);
        BuildGrid next;
        next.orig = Array2D<int32_t>(2 * h1 + 1, 2 * h2 + 1);
        next.amp = Array2D<double>(2 * h1 + 1, 2 * h2 + 1);
        for (int r = 0; r <= 2 * h1; ++r)
            for (int c = 0; c <= 2 * h2; ++c) {
                next.orig(r, c) = g.orig(cc1 - h1 + r, cc2 - h2 + c);
                next.amp(r, c) = g.amp(cc1 - h1 + r, cc2 - h2 + c) * lp1[r] * lp2[c];
            }
        g = std::move(next);
    }

    add_identity_wedge(per_scale[0], 0, g);

    for (int s = 0; s < cfg.nscales; ++s) {
        int orientation = 0;
        for (auto& wd : per_scale[s]) {
            wd.orientation = orientation++;
            shapes_.push_back({wd.scale, wd.orientation, wd.rows, wd.cols});
            impl_->wedges.push_back(std::move(wd));
        }
    }
}

FdctPlan::~FdctPlan() = default;

std::size_t FdctPlan::total_coefficients() const {
    std::size_t n = 0;
    for (const auto& s : shapes_) n += std::size_t(s.rows) * s.cols;
    return n;
}

CurveletCoeffs FdctPlan::forward(const GrayImage& img) const {
    require(img.width == width_ && img.height == height_, "fdct forward: image dims mismatch");
    Array2D<cplx> x(height_, width_);
    for (int r = 0; r < height_; ++r)
        for (int c = 0; c < width_; ++c) x(r, c) = img.at(c, r);
    Array2D<cplx> X = centered_fft2(x, FFTW_FORWARD);

    CurveletCoeffs out;
    out.config = cfg_;
    out.width = width_;
    out.height = height_;
    out.bands.reserve(impl_->wedges.size());
    for (const auto& wd : impl_->wedges) {
        Array2D<cplx> what(wd.rows, wd.cols, cplx(0.0, 0.0));
        for (std::size_t i = 0; i < wd.src.size(); ++i)
            what.v[wd.dst[i]] += wd.w[i] * X.v[wd.src[i]];
        Subband band;
        band.scale = wd.scale;
        band.orientation = wd.orientation;
        band.data = centered_fft2(what, FFTW_BACKWARD);
        out.bands.push_back(std::move(band));
    }
    return out;
}

GrayImage FdctPlan::inverse(const CurveletCoeffs& coeffs) const {
    require(coeffs.config == cfg_ && coeffs.width == width_ && coeffs.height == height_,
            "fdct inverse: coefficient config mismatch");
    require(coeffs.bands.size() == impl_->wedges.size(), "fdct inverse: band count mismatch");
    Array2D<cplx> Xrec(height_, width_, cplx(0.0, 0.0));
    for (std::size_t b = 0; b < impl_->wedges.size(); ++b) {
        const auto& wd = impl_->wedges[b];
        const auto& band = coeffs.bands[b];
        require(band.data.rows == wd.rows && band.data.cols == wd.cols,
                "fdct inverse: band shape mismatch");
        Array2D<cplx> what = centered_fft2(band.data, FFTW_FORWARD);
        for (std::size_t i = 0; i < wd.src.size(); ++i)
            Xrec.v[wd.src[i]] += wd.w[i] * what.v[wd.dst[i]];
    }
    Array2D<cplx> x = centered_fft2(Xrec, FFTW_BACKWARD);
    GrayImage img(width_, height_);
    for (int r = 0; r < height_; ++r)
        for (int c = 0; c < width_; ++c) img.at(c, r) = x(r, c).real();
    return img;
}

Array2D<double> FdctPlan::tiling_sum_squares() const {
    Array2D<double> s(height_, width_, 0.0);
    for (const auto& wd : impl_->wedges)
        for (std::size_t i = 0; i < wd.src.size(); ++i) s.v[wd.src[i]] += wd.w[i] * wd.w[i];
    return s;
}

WedgeWindow FdctPlan::cartesian_window(int scale, int orientation) const {
    WedgeWindow w;
    w.scale = scale;
    w.orientation = orientation;
    w.values = Array2D<double>(height_, width_, 0.0);
    for (const auto& wd : impl_->wedges) {
        if (wd.scale != scale || wd.orientation != orientation) continue;
        for (std::size_t i = 0; i < wd.src.size(); ++i)
            w.values.v[wd.src[i]] += wd.w[i] * wd.w[i];
        for (auto& v : w.values.v) v = std::sqrt(v);
        return w;
    }
    fail("cartesian_window: no such wedge");
}

// ---------------------------------------------------------------------------
// plan cache + convenience wrappers

namespace {

struct PlanKey {
    int h, w, nscales, nangles, finest;
    bool operator<(const PlanKey& o) const {
        return std::tie(h, w, nscales, nangles, finest) <
               std::tie(o.h, o.w, o.nscales, o.nangles, o.finest);
    }
};

std::mutex g_plan_mu;
std::map<PlanKey, std::unique_ptr<FdctPlan>> g_plans;

}  // namespace

const FdctPlan& fdct_plan_for(int height, int width, const TransformConfig& cfg) {
    PlanKey key{height, width, cfg.nscales, cfg.nangles_coarse,
                cfg.finest == FinestScale::kCurvelets ? 1 : 0};
    std::scoped_lock lk(g_plan_mu);
    auto it = g_plans.find(key);
    if (it == g_plans.end())
        it = g_plans.emplace(key, std::make_unique<FdctPlan>(height, width, cfg)).first;
    return *it->second;
}

CurveletCoeffs fdct_forward(const GrayImage& img, const TransformConfig& cfg) {
    return fdct_plan_for(img.height, img.width, cfg).forward(img);
}

GrayImage fdct_inverse(const CurveletCoeffs& coeffs) {
    return fdct_plan_for(coeffs.height, coeffs.width, coeffs.config).inverse(coeffs);
}

// ---------------------------------------------------------------------------
// independent shape audit (plain arithmetic on the corona geometry)

std::vector<WedgeShape> audit_wedge_shapes(int height, int width, const TransformConfig& cfg) {
    std::vector<WedgeShape> shapes;
    double M1 = height / 3.0, M2 = width / 3.0;
    std::vector<std::vector<WedgeShape>> per_scale(cfg.nscales);
    int first_scale;
    if (cfg.finest == FinestScale::kCurvelets) {
        first_scale = cfg.nscales;
    } else {
        M1 /= 2.0;
        M2 /= 2.0;
        per_scale[cfg.nscales - 1].push_back({cfg.nscales - 1, 0, height, width});
        first_scale = cfg.nscales - 1;
    }
    for (int j = first_scale; j >= 2; --j) {
        M1 /= 2.0;
        M2 /= 2.0;
        int count = wedge_count_at_scale(j - 1, cfg);
        int npq = count / 4;
        int orientation = 0;
        for (int quadrant = 1; quadrant <= 4; ++quadrant) {
            double M_horiz = (quadrant % 2 == 1) ? M2 : M1;
            double M_vert = (quadrant % 2 == 1) ? M1 : M2;
            int F = int(std::floor(4 * M_horiz));
            int V = int(std::floor(4 * M_vert));
            std::vector<int> E = wedge_endpoints_for(F, npq);
            int fwev = iround(2.0 * V / (2.0 * npq) + 1.0);
            int L = V - int(std::floor(M_vert));
            int lc = L + int(std::ceil(fwev / 4.0));
            std::vector<std::pair<int, int>> dims;
            dims.emplace_back(lc, E[1] + E[0] - 1);
            for (int s = 1; s + 1 < npq; ++s) dims.emplace_back(L, E[s + 1] - E[s - 1] + 1);
            dims.emplace_back(lc, 4 * F + 3 - E[npq - 1] - E[npq - 2]);
            for (auto [a, b] : dims) {
                if (quadrant % 2 == 1)
                    per_scale[j - 1].push_back({j - 1, orientation++, a, b});
                else
                    per_scale[j - 1].push_back({j - 1, orientation++, b, a});
            }
        }
        (void)count;
    }
    M1 /= 2.0;
    M2 /= 2.0;
    per_scale[0].push_back({0, 0, 2 * int(std::floor(2 * M1)) + 1, 2 * int(std::floor(2 * M2)) + 1});
    for (auto& v : per_scale)
        for (auto& s : v) shapes.push_back(s);
    std::stable_sort(shapes.begin(), shapes.end(),
                     [](const WedgeShape& a, const WedgeShape& b) { return a.scale < b.scale; });
    return shapes;
}

std::size_t audit_total_coefficients(int height, int width, const TransformConfig& cfg) {
    std::size_t n = 0;
    for (const auto& s : audit_wedge_shapes(height, width, cfg)) n += std::size_t(s.rows) * s.cols;
    return n;
}

// ---------------------------------------------------------------------------
// coefficient dump

namespace {
constexpr uint32_t kCoeffMagic = 0x43464344;  // "CFCD"
template <typename T>
void put(std::ostream& f, T v) { f.write(reinterpret_cast<const char*>(&v), sizeof v); }
template <typename T>
T get(std::istream& f) {
    T v{};
    f.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
}  // namespace

void write_coeffs(const CurveletCoeffs& coeffs, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail("write_coeffs: cannot open " + path);
    put(f, kCoeffMagic);
    put<int32_t>(f, coeffs.height);
    put<int32_t>(f, coeffs.width);
    put<int32_t>(f, coeffs.config.nscales);
    put<int32_t>(f, coeffs.config.nangles_coarse);
    put<int32_t>(f, coeffs.config.finest == FinestScale::kCurvelets ? 1 : 0);
    put<int32_t>(f, int32_t(coeffs.bands.size()));
    for (const auto& b : coeffs.bands) {
        put<int32_t>(f, b.scale);
        put<int32_t>(f, b.orientation);
        put<int32_t>(f, b.data.rows);
        put<int32_t>(f, b.data.cols);
    }
    for (const auto& b : coeffs.bands)
        f.write(reinterpret_cast<const char*>(b.data.v.data()),
                std::streamsize(b.data.size() * sizeof(cplx)));
    if (!f) fail("write_coeffs: write failed for " + path);
}

CurveletCoeffs read_coeffs(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail("read_coeffs: cannot open " + path);
    if (get<uint32_t>(f) != kCoeffMagic) fail("read_coeffs: bad magic in " + path);
    CurveletCoeffs out;
    out.height = get<int32_t>(f);
    out.width = get<int32_t>(f);
    out.config.nscales = get<int32_t>(f);
    out.config.nangles_coarse = get<int32_t>(f);
    out.config.finest = get<int32_t>(f) ? FinestScale::kCurvelets : FinestScale::kWavelets;
    int nbands = get<int32_t>(f);
    if (nbands < 0 || nbands > 1 << 20) fail("read_coeffs: corrupt band count");
    out.bands.resize(nbands);
    for (auto& b : out.bands) {
        b.scale = get<int32_t>(f);
        b.orientation = get<int32_t>(f);
        int r = get<int32_t>(f), c = get<int32_t>(f);
        if (r <= 0 || c <= 0 || std::size_t(r) * c > (std::size_t(1) << 28))
            fail("read_coeffs: corrupt band shape");
        b.data = Array2D<cplx>(r, c);
    }
    for (auto& b : out.bands)
        f.read(reinterpret_cast<char*>(b.data.v.data()),
               std::streamsize(b.data.size() * sizeof(cplx)));
    if (!f) fail("read_coeffs: truncated file " + path);
    return out;
}

}  // namespace curveface
