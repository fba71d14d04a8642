// Copyright 2026 The skyrtex authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "skyrtex/imgfeat.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <deque>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

#include "skyrtex/errors.hpp"
#include "skyrtex/plot.hpp"

namespace skyrtex::imgfeat {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW plan creation/destruction is not thread-safe; executing distinct
// plans is. All transforms here are FFTW_ESTIMATE, so results do not depend
// on planner timing.
std::mutex &fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

std::vector<std::complex<double>> dft2d(const std::vector<std::complex<double>> &input, int width,
                                        int height, int direction) {
    std::vector<std::complex<double>> data = input;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan = fftw_plan_dft_2d(height, width, reinterpret_cast<fftw_complex *>(data.data()),
                                reinterpret_cast<fftw_complex *>(data.data()), direction,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    return data;
}

std::vector<std::complex<double>> forward_dft(const GrayImage &image) {
    std::vector<std::complex<double>> data(image.size());
    for (std::size_t i = 0; i < image.size(); ++i)
        data[i] = image.pix[i];
    return dft2d(data, image.width, image.height, FFTW_FORWARD);
}

int signed_frequency(int bin, int size) { return bin <= size / 2 ? bin : bin - size; }

GrayImage fftshift(const GrayImage &raster) {
    GrayImage out(raster.width, raster.height);
    const int hx = raster.width / 2, hy = raster.height / 2;
    for (int y = 0; y < raster.height; ++y)
        for (int x = 0; x < raster.width; ++x)
            out.at((x + hx) % raster.width, (y + hy) % raster.height) = raster.at(x, y);
    return out;
}

// Otsu threshold over a 256-bin histogram; returns the split bin, or -1 for
// a single-level image. Foreground = bins strictly above the split.
int otsu_split(const GrayImage &gray) {
    constexpr int kBins = 256;
    std::array<std::int64_t, kBins> hist{};
    for (double g : gray.pix) {
        int b = static_cast<int>(std::clamp(g, 0.0, 1.0) * kBins);
        hist[std::min(b, kBins - 1)]++;
    }
    const double total = static_cast<double>(gray.size());
    double sum_all = 0.0;
    for (int b = 0; b < kBins; ++b)
        sum_all += b * static_cast<double>(hist[b]);

    double best_var = -1.0;
    int best_split = -1;
    double w0 = 0.0, sum0 = 0.0;
    for (int b = 0; b < kBins - 1; ++b) {
        w0 += static_cast<double>(hist[b]);
        if (w0 == 0.0)
            continue;
        const double w1 = total - w0;
        if (w1 == 0.0)
            break;
        sum0 += b * static_cast<double>(hist[b]);
        const double mu0 = sum0 / w0;
        const double mu1 = (sum_all - sum0) / w1;
        const double between = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (between > best_var) {
            best_var = between;
            best_split = b;
        }
    }
    return best_split;
}

void gaussian_blur_inplace(GrayImage &image, double sigma) {
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        sum += kernel[i + radius];
    }
    for (double &k : kernel)
        k /= sum;

    const int w = image.width, h = image.height;
    GrayImage tmp(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * image.at(std::clamp(x + i, 0, w - 1), y);
            tmp.at(x, y) = acc;
        }
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * tmp.at(x, std::clamp(y + i, 0, h - 1));
            image.at(x, y) = acc;
        }
}

} // namespace

std::string FeatureFlags::to_string() const {
    std::string out;
    auto add = [&out](bool set, const char *name) {
        if (!set)
            return;
        if (!out.empty())
            out += '|';
        out += name;
    };
    add(hu, "hu");
    add(acf, "acf");
    add(glcm_correlation, "glcm_correlation");
    add(fractal_dim, "fractal_dim");
    add(anisotropy, "anisotropy");
    return out.empty() ? "-" : out;
}

FeatureFlags FeatureFlags::parse(std::string_view text) {
    FeatureFlags flags;
    if (text == "-" || text.empty())
        return flags;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find('|', pos);
        std::string_view token = text.substr(pos, next == std::string_view::npos ? next : next - pos);
        if (token == "hu")
            flags.hu = true;
        else if (token == "acf")
            flags.acf = true;
        else if (token == "glcm_correlation")
            flags.glcm_correlation = true;
        else if (token == "fractal_dim")
            flags.fractal_dim = true;
        else if (token == "anisotropy")
            flags.anisotropy = true;
        if (next == std::string_view::npos)
            break;
        pos = next + 1;
    }
    return flags;
}

std::vector<double> radial_profile(const GrayImage &gray, int n_bins) {
    if (n_bins < 1)
        throw std::invalid_argument("radial_profile: n_bins must be >= 1");
    if (gray.size() == 0)
        throw std::invalid_argument("radial_profile: empty image");

    const double cx = (gray.width - 1) / 2.0;
    const double cy = (gray.height - 1) / 2.0;
    const double rho_max = std::sqrt(cx * cx + cy * cy);

    std::vector<double> sums(n_bins, 0.0);
    std::vector<std::int64_t> counts(n_bins, 0);
    for (int y = 0; y < gray.height; ++y) {
        for (int x = 0; x < gray.width; ++x) {
            const double rho = std::hypot(x - cx, y - cy);
            int b = rho_max > 0.0 ? static_cast<int>(rho / rho_max * n_bins) : 0;
            b = std::min(b, n_bins - 1);
            sums[b] += gray.at(x, y);
            counts[b]++;
        }
    }
    // Empty bins inherit the previous bin's value; a leading run of empty
    // bins inherits the first occupied one.
    double first_value = 0.0;
    for (int b = 0; b < n_bins; ++b)
        if (counts[b] > 0) {
            first_value = sums[b] / static_cast<double>(counts[b]);
            break;
        }
    std::vector<double> profile(n_bins, 0.0);
    double last = first_value;
    for (int b = 0; b < n_bins; ++b) {
        if (counts[b] > 0)
            last = sums[b] / static_cast<double>(counts[b]);
        profile[b] = last;
    }
    return profile;
}

Spectrum fft_spectrum(const GrayImage &gray) {
    if (gray.width < 2 || gray.height < 2)
        throw std::invalid_argument("fft_spectrum: image must be at least 2x2");

    const auto freq = forward_dft(gray);
    GrayImage power(gray.width, gray.height);
    for (std::size_t i = 0; i < freq.size(); ++i)
        power.pix[i] = std::norm(freq[i]);

    double power_sum = 0.0, centroid_acc = 0.0;
    double mxx = 0.0, myy = 0.0, mxy = 0.0;
    for (int ky = 0; ky < gray.height; ++ky) {
        const double fy = signed_frequency(ky, gray.height);
        for (int kx = 0; kx < gray.width; ++kx) {
            if (kx == 0 && ky == 0)
                continue;
            const double fx = signed_frequency(kx, gray.width);
            const double p = power.at(kx, ky);
            power_sum += p;
            centroid_acc += std::sqrt(fx * fx + fy * fy) * p;
            mxx += fx * fx * p;
            myy += fy * fy * p;
            mxy += fx * fy * p;
        }
    }

    FftStats stats;
    if (power_sum > 0.0) {
        stats.spectral_centroid = centroid_acc / power_sum;
        mxx /= power_sum;
        myy /= power_sum;
        mxy /= power_sum;
        const double tr = mxx + myy;
        const double det = mxx * myy - mxy * mxy;
        const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
        const double lambda_max = tr / 2.0 + disc;
        const double lambda_min = tr / 2.0 - disc;
        if (lambda_min <= lambda_max / kAnisotropyCap)
            stats.anisotropy = kAnisotropyCap;
        else
            stats.anisotropy = lambda_max / lambda_min;
    } else {
        stats.spectral_centroid = 0.0;
        stats.anisotropy = 1.0;
    }

    GrayImage display(gray.width, gray.height);
    for (std::size_t i = 0; i < power.size(); ++i)
        display.pix[i] = std::log1p(power.pix[i]);
    display = fftshift(display);
    const double peak = *std::max_element(display.pix.begin(), display.pix.end());
    if (peak > 0.0)
        for (double &v : display.pix)
            v /= peak;
    return Spectrum{std::move(display), stats};
}

std::array<double, 7> hu_moments(const GrayImage &gray) {
    double total = 0.0;
    for (double g : gray.pix)
        total += g;
    if (total <= 0.0)
        throw DegenerateInputError("hu_moments: zero total mass");

    double cx = 0.0, cy = 0.0;
    for (int y = 0; y < gray.height; ++y)
        for (int x = 0; x < gray.width; ++x) {
            cx += x * gray.at(x, y);
            cy += y * gray.at(x, y);
        }
    cx /= total;
    cy /= total;

    // Central moments of the unit-mass distribution (mu00 == 1 by
    // construction, which also cancels uniform intensity factors).
    double mu20 = 0, mu02 = 0, mu11 = 0, mu30 = 0, mu03 = 0, mu21 = 0, mu12 = 0;
    for (int y = 0; y < gray.height; ++y)
        for (int x = 0; x < gray.width; ++x) {
            const double w = gray.at(x, y) / total;
            const double dx = x - cx, dy = y - cy;
            mu20 += w * dx * dx;
            mu02 += w * dy * dy;
            mu11 += w * dx * dy;
            mu30 += w * dx * dx * dx;
            mu03 += w * dy * dy * dy;
            mu21 += w * dx * dx * dy;
            mu12 += w * dx * dy * dy;
        }

    const double a = mu30 + mu12; // eta30 + eta12
    const double b = mu21 + mu03;
    const double c = mu30 - 3 * mu12;
    const double d = 3 * mu21 - mu03;

    std::array<double, 7> phi;
    phi[0] = mu20 + mu02;
    phi[1] = (mu20 - mu02) * (mu20 - mu02) + 4 * mu11 * mu11;
    phi[2] = c * c + d * d;
    phi[3] = a * a + b * b;
    phi[4] = c * a * (a * a - 3 * b * b) + d * b * (3 * a * a - b * b);
    phi[5] = (mu20 - mu02) * (a * a - b * b) + 4 * mu11 * a * b;
    phi[6] = d * a * (a * a - 3 * b * b) - c * b * (3 * a * a - b * b);

    for (double &h : phi) {
        const double sign = h > 0.0 ? 1.0 : (h < 0.0 ? -1.0 : 0.0);
        h = sign * std::log10(std::abs(h) + 1e-30);
    }
    return phi;
}

GlcmResult glcm_features(const GrayImage &gray, int levels,
                         const std::vector<std::pair<int, int>> &offsets) {
    if (levels < 2)
        throw std::invalid_argument("glcm_features: levels must be >= 2");

    std::vector<int> quantized(gray.size());
    for (std::size_t i = 0; i < gray.size(); ++i) {
        int q = static_cast<int>(std::clamp(gray.pix[i], 0.0, 1.0) * levels);
        quantized[i] = std::min(q, levels - 1);
    }

    GlcmResult result;
    result.per_offset.reserve(offsets.size());
    for (const auto &[dx, dy] : offsets) {
        std::vector<double> p(static_cast<std::size_t>(levels) * levels, 0.0);
        std::int64_t pairs = 0;
        for (int y = 0; y < gray.height; ++y) {
            const int yy = y + dy;
            if (yy < 0 || yy >= gray.height)
                continue;
            for (int x = 0; x < gray.width; ++x) {
                const int xx = x + dx;
                if (xx < 0 || xx >= gray.width)
                    continue;
                const int a = quantized[static_cast<std::size_t>(y) * gray.width + x];
                const int b = quantized[static_cast<std::size_t>(yy) * gray.width + xx];
                p[static_cast<std::size_t>(a) * levels + b] += 1.0;
                p[static_cast<std::size_t>(b) * levels + a] += 1.0;
                pairs += 2;
            }
        }
        GlcmFeatures f;
        if (pairs == 0) {
            result.per_offset.push_back(f);
            continue;
        }
        for (double &v : p)
            v /= static_cast<double>(pairs);

        std::vector<double> marginal(levels, 0.0);
        for (int i = 0; i < levels; ++i)
            for (int j = 0; j < levels; ++j)
                marginal[i] += p[static_cast<std::size_t>(i) * levels + j];
        double mean = 0.0;
        for (int i = 0; i < levels; ++i)
            mean += i * marginal[i];
        double var = 0.0;
        for (int i = 0; i < levels; ++i)
            var += (i - mean) * (i - mean) * marginal[i];

        for (int i = 0; i < levels; ++i) {
            for (int j = 0; j < levels; ++j) {
                const double pij = p[static_cast<std::size_t>(i) * levels + j];
                if (pij == 0.0)
                    continue;
                f.contrast += (i - j) * (i - j) * pij;
                f.energy += pij * pij;
                f.homogeneity += pij / (1.0 + std::abs(i - j));
                if (var > 0.0)
                    f.correlation += (i - mean) * (j - mean) * pij / var;
            }
        }
        if (var <= 0.0) {
            f.correlation = 0.0; // zero variance: correlation undefined
            result.correlation_degenerate = true;
        }
        result.per_offset.push_back(f);
    }
    return result;
}

double fractal_dimension(const GrayImage &gray) {
    const int side = std::min(gray.width, gray.height);
    if (side < 16)
        throw std::invalid_argument("fractal_dimension: image side must be >= 16");

    const int split = otsu_split(gray);
    if (split < 0)
        throw DegenerateInputError("fractal_dimension: single-level image");
    const double threshold = (split + 1) / 256.0;

    std::vector<std::uint8_t> fg(gray.size());
    std::int64_t fg_count = 0;
    for (std::size_t i = 0; i < gray.size(); ++i) {
        fg[i] = std::clamp(gray.pix[i], 0.0, 1.0) >= threshold ? 1 : 0;
        fg_count += fg[i];
    }
    if (fg_count == 0 || fg_count == static_cast<std::int64_t>(gray.size()))
        throw DegenerateInputError("fractal_dimension: empty or full foreground");

    std::vector<double> log_inv_size, log_count;
    for (int s = 2; s <= side / 4; s *= 2) {
        const int bx = (gray.width + s - 1) / s;
        const int by = (gray.height + s - 1) / s;
        std::vector<std::uint8_t> occupied(static_cast<std::size_t>(bx) * by, 0);
        for (int y = 0; y < gray.height; ++y)
            for (int x = 0; x < gray.width; ++x)
                if (fg[static_cast<std::size_t>(y) * gray.width + x])
                    occupied[static_cast<std::size_t>(y / s) * bx + x / s] = 1;
        std::int64_t count = 0;
        for (std::uint8_t o : occupied)
            count += o;
        log_inv_size.push_back(-std::log(static_cast<double>(s)));
        log_count.push_back(std::log(static_cast<double>(count)));
    }

    const std::size_t n = log_inv_size.size();
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += log_inv_size[i];
        mean_y += log_count[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (log_inv_size[i] - mean_x) * (log_count[i] - mean_y);
        var += (log_inv_size[i] - mean_x) * (log_inv_size[i] - mean_x);
    }
    return cov / var;
}

std::vector<std::int64_t> pixel_histogram(const GrayImage &gray, int bins) {
    if (bins < 1)
        throw std::invalid_argument("pixel_histogram: bins must be >= 1");
    std::vector<std::int64_t> hist(bins, 0);
    for (double g : gray.pix) {
        int b = static_cast<int>(std::clamp(g, 0.0, 1.0) * bins);
        hist[std::min(b, bins - 1)]++;
    }
    return hist;
}

EdgeResult canny_edges(const GrayImage &gray, double sigma, double low, double high) {
    if (!(low > 0.0 && low < high))
        throw std::invalid_argument("canny_edges: need 0 < low < high");

    const int w = gray.width, h = gray.height;
    GrayImage blurred = gray;
    gaussian_blur_inplace(blurred, sigma);

    std::vector<double> mag(gray.size(), 0.0);
    std::vector<std::uint8_t> sector(gray.size(), 0);
    auto clamped = [&](int x, int y) {
        return blurred.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1));
    };
    double max_mag = 0.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gx = clamped(x + 1, y - 1) + 2 * clamped(x + 1, y) + clamped(x + 1, y + 1) -
                              clamped(x - 1, y - 1) - 2 * clamped(x - 1, y) - clamped(x - 1, y + 1);
            const double gy = clamped(x - 1, y + 1) + 2 * clamped(x, y + 1) + clamped(x + 1, y + 1) -
                              clamped(x - 1, y - 1) - 2 * clamped(x, y - 1) - clamped(x + 1, y - 1);
            const double m = std::hypot(gx, gy);
            mag[static_cast<std::size_t>(y) * w + x] = m;
            max_mag = std::max(max_mag, m);
            double angle = std::atan2(gy, gx) * 180.0 / kPi;
            if (angle < 0)
                angle += 180.0;
            std::uint8_t s;
            if (angle < 22.5 || angle >= 157.5)
                s = 0; // gradient ~horizontal, compare left/right
            else if (angle < 67.5)
                s = 1; // diagonal /
            else if (angle < 112.5)
                s = 2; // gradient ~vertical, compare up/down
            else
                s = 3; // diagonal backslash
            sector[static_cast<std::size_t>(y) * w + x] = s;
        }
    }

    EdgeResult result;
    result.width = w;
    result.height = h;
    result.edges.assign(gray.size(), 0);
    if (max_mag <= 0.0)
        return result;

    auto mag_at = [&](int x, int y) {
        if (x < 0 || y < 0 || x >= w || y >= h)
            return 0.0;
        return mag[static_cast<std::size_t>(y) * w + x];
    };
    static constexpr int kNeighbor[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};

    const double high_t = high * max_mag;
    const double low_t = low * max_mag;
    std::vector<std::uint8_t> state(gray.size(), 0); // 0 none, 1 weak, 2 strong
    std::deque<std::pair<int, int>> frontier;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * w + x;
            const double m = mag[idx];
            if (m < low_t)
                continue;
            const int dx = kNeighbor[sector[idx]][0], dy = kNeighbor[sector[idx]][1];
            if (m < mag_at(x + dx, y + dy) || m < mag_at(x - dx, y - dy))
                continue; // suppressed
            state[idx] = m >= high_t ? 2 : 1;
            if (state[idx] == 2) {
                result.edges[idx] = 1;
                frontier.emplace_back(x, y);
            }
        }
    }
    while (!frontier.empty()) {
        auto [x, y] = frontier.front();
        frontier.pop_front();
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx, ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h)
                    continue;
                const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
                if (state[nidx] == 1 && !result.edges[nidx]) {
                    result.edges[nidx] = 1;
                    frontier.emplace_back(nx, ny);
                }
            }
    }

    std::int64_t edge_count = 0;
    for (std::uint8_t e : result.edges)
        edge_count += e;
    result.density = static_cast<double>(edge_count) / static_cast<double>(gray.size());
    return result;
}

AcfResult autocorrelation2d(const GrayImage &gray) {
    double mean = 0.0;
    for (double g : gray.pix)
        mean += g;
    mean /= static_cast<double>(gray.size());

    std::vector<std::complex<double>> centered(gray.size());
    bool constant = true;
    for (std::size_t i = 0; i < gray.size(); ++i) {
        centered[i] = gray.pix[i] - mean;
        if (gray.pix[i] != gray.pix[0])
            constant = false;
    }
    if (constant)
        throw DegenerateInputError("autocorrelation2d: constant image");

    auto freq = dft2d(centered, gray.width, gray.height, FFTW_FORWARD);
    for (auto &f : freq)
        f = std::norm(f);
    auto acf_raw = dft2d(freq, gray.width, gray.height, FFTW_BACKWARD);

    const double zero_lag = acf_raw[0].real();
    if (zero_lag <= 0.0)
        throw DegenerateInputError("autocorrelation2d: zero variance");

    AcfResult result;
    result.acf = GrayImage(gray.width, gray.height);
    for (std::size_t i = 0; i < acf_raw.size(); ++i)
        result.acf.pix[i] = acf_raw[i].real() / zero_lag;

    const double threshold = std::exp(-1.0);
    result.decay_x = gray.width / 2;
    for (int d = 1; d <= gray.width / 2; ++d)
        if (result.acf.at(d, 0) < threshold) {
            result.decay_x = d;
            break;
        }
    result.decay_y = gray.height / 2;
    for (int d = 1; d <= gray.height / 2; ++d)
        if (result.acf.at(0, d) < threshold) {
            result.decay_y = d;
            break;
        }
    return result;
}

HaarBands haar_decompose(const GrayImage &gray) {
    if (gray.width % 2 != 0 || gray.height % 2 != 0)
        throw std::invalid_argument("haar_decompose: dimensions must be even");
    const int w = gray.width, h = gray.height;
    const int hw = w / 2, hh = h / 2;
    constexpr double kInvSqrt2 = 0.70710678118654752440;

    // Rows, then columns.
    GrayImage rows(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < hw; ++x) {
            const double p0 = gray.at(2 * x, y), p1 = gray.at(2 * x + 1, y);
            rows.at(x, y) = (p0 + p1) * kInvSqrt2;
            rows.at(hw + x, y) = (p0 - p1) * kInvSqrt2;
        }
    GrayImage full(w, h);
    for (int y = 0; y < hh; ++y)
        for (int x = 0; x < w; ++x) {
            const double p0 = rows.at(x, 2 * y), p1 = rows.at(x, 2 * y + 1);
            full.at(x, y) = (p0 + p1) * kInvSqrt2;
            full.at(x, hh + y) = (p0 - p1) * kInvSqrt2;
        }

    HaarBands bands;
    bands.ll = GrayImage(hw, hh);
    bands.hl = GrayImage(hw, hh);
    bands.lh = GrayImage(hw, hh);
    bands.hh = GrayImage(hw, hh);
    for (int y = 0; y < hh; ++y)
        for (int x = 0; x < hw; ++x) {
            bands.ll.at(x, y) = full.at(x, y);
            bands.hl.at(x, y) = full.at(hw + x, y);
            bands.lh.at(x, y) = full.at(x, hh + y);
            bands.hh.at(x, y) = full.at(hw + x, hh + y);
        }
    return bands;
}

GrayImage haar_reconstruct(const HaarBands &bands) {
    const int hw = bands.ll.width, hh = bands.ll.height;
    const int w = 2 * hw, h = 2 * hh;
    constexpr double kInvSqrt2 = 0.70710678118654752440;

    GrayImage rows(w, h);
    for (int y = 0; y < hh; ++y)
        for (int x = 0; x < w; ++x) {
            const double lo = x < hw ? bands.ll.at(x, y) : bands.hl.at(x - hw, y);
            const double hi = x < hw ? bands.lh.at(x, y) : bands.hh.at(x - hw, y);
            rows.at(x, 2 * y) = (lo + hi) * kInvSqrt2;
            rows.at(x, 2 * y + 1) = (lo - hi) * kInvSqrt2;
        }
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < hw; ++x) {
            const double lo = rows.at(x, y), hi = rows.at(hw + x, y);
            out.at(2 * x, y) = (lo + hi) * kInvSqrt2;
            out.at(2 * x + 1, y) = (lo - hi) * kInvSqrt2;
        }
    return out;
}

HaarResult haar_approx(const GrayImage &gray, int levels) {
    if (levels < 1)
        throw std::invalid_argument("haar_approx: levels must be >= 1");
    const int divisor = 1 << levels;
    if (gray.width % divisor != 0 || gray.height % divisor != 0)
        throw std::invalid_argument("haar_approx: dimensions not divisible by 2^levels");

    double total_energy = 0.0;
    for (double g : gray.pix)
        total_energy += g * g;

    GrayImage ll = gray;
    for (int level = 0; level < levels; ++level)
        ll = haar_decompose(ll).ll;

    double ll_energy = 0.0;
    for (double v : ll.pix)
        ll_energy += v * v;

    HaarResult result;
    result.energy_ll = total_energy > 0.0 ? ll_energy / total_energy : 1.0;
    result.ll_display = GrayImage(gray.width, gray.height);
    for (int y = 0; y < gray.height; ++y)
        for (int x = 0; x < gray.width; ++x)
            result.ll_display.at(x, y) = ll.at(x / divisor, y / divisor);
    return result;
}

std::vector<double> lbp_histogram(const GrayImage &gray) {
    if (gray.width < 3 || gray.height < 3)
        throw std::invalid_argument("lbp_histogram: image must be at least 3x3");

    // Clockwise from the top-left neighbor, y growing downward.
    static constexpr int kOffsets[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {1, 0},
                                           {1, 1},   {0, 1},  {-1, 1}, {-1, 0}};
    std::vector<double> hist(kLbpBins, 0.0);
    std::int64_t count = 0;
    for (int y = 1; y + 1 < gray.height; ++y) {
        for (int x = 1; x + 1 < gray.width; ++x) {
            const double center = gray.at(x, y);
            int code = 0;
            for (int b = 0; b < 8; ++b)
                if (gray.at(x + kOffsets[b][0], y + kOffsets[b][1]) >= center)
                    code |= 1 << b;
            hist[code] += 1.0;
            count++;
        }
    }
    for (double &v : hist)
        v /= static_cast<double>(count);
    return hist;
}

FeatureVector extract_all(const GrayImage &gray) {
    if (gray.width < 16 || gray.height < 16)
        throw std::invalid_argument("extract_all: image must be at least 16x16");

    FeatureVector fv;
    fv.radial_profile = radial_profile(gray, kRadialBins);

    const Spectrum spectrum = fft_spectrum(gray);
    fv.fft = spectrum.stats;
    if (fv.fft.anisotropy >= kAnisotropyCap)
        fv.flags.anisotropy = true;

    const auto [min_it, max_it] = std::minmax_element(gray.pix.begin(), gray.pix.end());
    const bool is_constant = *min_it == *max_it;

    if (is_constant) {
        fv.flags.hu = true; // moments carry no signal
        fv.hu.fill(0.0);
    } else {
        try {
            fv.hu = hu_moments(gray);
        } catch (const DegenerateInputError &) {
            fv.flags.hu = true;
            fv.hu.fill(0.0);
        }
    }

    GlcmResult glcm = glcm_features(gray);
    fv.glcm = std::move(glcm.per_offset);
    fv.flags.glcm_correlation = glcm.correlation_degenerate;

    try {
        fv.fractal_dim = fractal_dimension(gray);
    } catch (const DegenerateInputError &) {
        fv.flags.fractal_dim = true;
        fv.fractal_dim = 0.0;
    }

    fv.hist = pixel_histogram(gray, kHistBins);
    fv.edge_density = canny_edges(gray).density;

    try {
        const AcfResult acf = autocorrelation2d(gray);
        fv.acf_decay_x = acf.decay_x;
        fv.acf_decay_y = acf.decay_y;
    } catch (const DegenerateInputError &) {
        fv.flags.acf = true;
        fv.acf_decay_x = 0.0;
        fv.acf_decay_y = 0.0;
    }

    // Pad by edge replication when a dimension is odd; 2^kHaarLevels == 2.
    if (gray.width % 2 == 0 && gray.height % 2 == 0) {
        fv.wavelet_energy_ll = haar_approx(gray, kHaarLevels).energy_ll;
    } else {
        GrayImage padded(gray.width + gray.width % 2, gray.height + gray.height % 2);
        for (int y = 0; y < padded.height; ++y)
            for (int x = 0; x < padded.width; ++x)
                padded.at(x, y) = gray.at(std::min(x, gray.width - 1), std::min(y, gray.height - 1));
        fv.wavelet_energy_ll = haar_approx(padded, kHaarLevels).energy_ll;
    }

    fv.lbp_hist = lbp_histogram(gray);
    return fv;
}

std::vector<double> feature_values(const FeatureVector &features) {
    std::vector<double> values;
    values.reserve(382);
    values.insert(values.end(), features.radial_profile.begin(), features.radial_profile.end());
    values.push_back(features.fft.spectral_centroid);
    values.push_back(features.fft.anisotropy);
    values.insert(values.end(), features.hu.begin(), features.hu.end());
    for (const GlcmFeatures &g : features.glcm) {
        values.push_back(g.contrast);
        values.push_back(g.energy);
        values.push_back(g.homogeneity);
        values.push_back(g.correlation);
    }
    values.push_back(features.fractal_dim);
    for (std::int64_t h : features.hist)
        values.push_back(static_cast<double>(h));
    values.push_back(features.edge_density);
    values.push_back(features.acf_decay_x);
    values.push_back(features.acf_decay_y);
    values.push_back(features.wavelet_energy_ll);
    values.insert(values.end(), features.lbp_hist.begin(), features.lbp_hist.end());
    return values;
}

std::vector<std::string> feature_column_names() {
    std::vector<std::string> names;
    names.reserve(382);
    char buf[32];
    for (int i = 0; i < kRadialBins; ++i) {
        std::snprintf(buf, sizeof(buf), "radial_%02d", i);
        names.emplace_back(buf);
    }
    names.emplace_back("fft_centroid");
    names.emplace_back("fft_anisotropy");
    for (int i = 1; i <= 7; ++i) {
        std::snprintf(buf, sizeof(buf), "hu_%d", i);
        names.emplace_back(buf);
    }
    for (std::size_t o = 0; o < kGlcmOffsets.size(); ++o) {
        for (const char *stat : {"contrast", "energy", "homogeneity", "correlation"}) {
            std::snprintf(buf, sizeof(buf), "glcm%zu_%s", o, stat);
            names.emplace_back(buf);
        }
    }
    names.emplace_back("fractal_dim");
    for (int i = 0; i < kHistBins; ++i) {
        std::snprintf(buf, sizeof(buf), "hist_%02d", i);
        names.emplace_back(buf);
    }
    names.emplace_back("edge_density");
    names.emplace_back("acf_decay_x");
    names.emplace_back("acf_decay_y");
    names.emplace_back("wavelet_energy_ll");
    for (int i = 0; i < kLbpBins; ++i) {
        std::snprintf(buf, sizeof(buf), "lbp_%03d", i);
        names.emplace_back(buf);
    }
    return names;
}

FeatureVector feature_vector_from_values(const std::vector<double> &values) {
    constexpr std::size_t kExpected = kRadialBins + 2 + 7 + 4 * kGlcmOffsets.size() + 1 +
                                      kHistBins + 1 + 2 + 1 + kLbpBins;
    if (values.size() != kExpected)
        throw std::invalid_argument("feature_vector_from_values: wrong value count");

    FeatureVector fv;
    std::size_t pos = 0;
    fv.radial_profile.assign(values.begin() + pos, values.begin() + pos + kRadialBins);
    pos += kRadialBins;
    fv.fft.spectral_centroid = values[pos++];
    fv.fft.anisotropy = values[pos++];
    for (int i = 0; i < 7; ++i)
        fv.hu[i] = values[pos++];
    fv.glcm.resize(kGlcmOffsets.size());
    for (auto &g : fv.glcm) {
        g.contrast = values[pos++];
        g.energy = values[pos++];
        g.homogeneity = values[pos++];
        g.correlation = values[pos++];
    }
    fv.fractal_dim = values[pos++];
    fv.hist.resize(kHistBins);
    for (auto &h : fv.hist)
        h = static_cast<std::int64_t>(std::llround(values[pos++]));
    fv.edge_density = values[pos++];
    fv.acf_decay_x = values[pos++];
    fv.acf_decay_y = values[pos++];
    fv.wavelet_energy_ll = values[pos++];
    fv.lbp_hist.assign(values.begin() + pos, values.begin() + pos + kLbpBins);
    return fv;
}

std::vector<std::string> write_feature_panels(const GrayImage &gray, const FeatureVector &features,
                                              const std::filesystem::path &directory,
                                              const std::string &stem) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    auto emit = [&](const std::string &suffix, const RgbImage &img) {
        const std::string name = stem + "_" + suffix + ".png";
        write_png(img, directory / name);
        written.push_back(name);
    };

    {
        plot::Canvas canvas(320, 180);
        canvas.line(10, 165, 310, 165, plot::kAxisGray);
        plot::draw_series(canvas, 12, 12, 308, 163, features.radial_profile, plot::kBarBlue);
        emit("radial", canvas.image);
    }
    emit("spectrum", plot::render_raster(fft_spectrum(gray).log_power, true));
    try {
        emit("acf", plot::render_raster(fftshift(autocorrelation2d(gray).acf), true));
    } catch (const DegenerateInputError &) {
        emit("acf", plot::render_raster(GrayImage(gray.width, gray.height, 0.0), true));
    }
    {
        GrayImage ll;
        if (gray.width % 2 == 0 && gray.height % 2 == 0)
            ll = haar_approx(gray, kHaarLevels).ll_display;
        else
            ll = GrayImage(gray.width, gray.height, 0.0);
        emit("wavelet_ll", plot::render_raster(ll, false));
    }
    {
        const EdgeResult edges = canny_edges(gray);
        GrayImage edge_map(edges.width, edges.height);
        for (std::size_t i = 0; i < edges.edges.size(); ++i)
            edge_map.pix[i] = edges.edges[i];
        emit("edges", plot::render_raster(edge_map, false));
    }
    {
        plot::Canvas canvas(320, 180);
        std::vector<double> hist_d(features.hist.begin(), features.hist.end());
        const double peak = *std::max_element(hist_d.begin(), hist_d.end());
        canvas.line(10, 165, 310, 165, plot::kAxisGray);
        plot::draw_bars(canvas, 12, 12, 308, 164, hist_d, peak > 0 ? peak : 1.0, plot::kBarBlue);
        emit("hist", canvas.image);
    }
    {
        plot::Canvas canvas(520, 180);
        const double peak =
            *std::max_element(features.lbp_hist.begin(), features.lbp_hist.end());
        canvas.line(10, 165, 510, 165, plot::kAxisGray);
        plot::draw_bars(canvas, 12, 12, 508, 164, features.lbp_hist, peak > 0 ? peak : 1.0,
                        plot::kBarOrange);
        emit("lbp", canvas.image);
    }
    return written;
}

} // namespace skyrtex::imgfeat
