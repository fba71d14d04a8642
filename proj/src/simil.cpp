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

#include "skyrtex/simil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "skyrtex/errors.hpp"
#include "skyrtex/parallel.hpp"
#include "skyrtex/plot.hpp"
#include "skyrtex/rng.hpp"

namespace skyrtex::simil {

namespace {

// Summed-area table with a zero top row/left column; rectangle sums of any
// window come out in O(1).
class Sat {
  public:
    Sat(const std::vector<double> &a, const std::vector<double> *b, int width, int height)
        : width_(width), table_(static_cast<std::size_t>(width + 1) * (height + 1), 0.0) {
        for (int y = 0; y < height; ++y) {
            double row = 0.0;
            for (int x = 0; x < width; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * width + x;
                row += b ? a[i] * (*b)[i] : a[i];
                at(x + 1, y + 1) = at(x + 1, y) + row;
            }
        }
    }

    double window(int x0, int y0, int size) const {
        return at(x0 + size, y0 + size) - at(x0, y0 + size) - at(x0 + size, y0) + at(x0, y0);
    }

  private:
    double &at(int x, int y) { return table_[static_cast<std::size_t>(y) * (width_ + 1) + x]; }
    double at(int x, int y) const {
        return table_[static_cast<std::size_t>(y) * (width_ + 1) + x];
    }

    int width_;
    std::vector<double> table_;
};

void write_json_file(const nlohmann::json &doc, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out << doc.dump(2) << "\n";
}

} // namespace

double ssim(const GrayImage &a, const GrayImage &b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("ssim: dimension mismatch");
    if (a.width < 1 || a.height < 1)
        throw std::invalid_argument("ssim: empty image");

    const int win = std::min({kSsimWindow, a.width, a.height});
    const double n = static_cast<double>(win) * win;

    const Sat sx(a.pix, nullptr, a.width, a.height);
    const Sat sy(b.pix, nullptr, a.width, a.height);
    const Sat sxx(a.pix, &a.pix, a.width, a.height);
    const Sat syy(b.pix, &b.pix, a.width, a.height);
    const Sat sxy(a.pix, &b.pix, a.width, a.height);

    double acc = 0.0;
    std::int64_t windows = 0;
    for (int y0 = 0; y0 + win <= a.height; ++y0) {
        for (int x0 = 0; x0 + win <= a.width; ++x0) {
            const double mu_x = sx.window(x0, y0, win) / n;
            const double mu_y = sy.window(x0, y0, win) / n;
            // Population variance; tiny negative round-off is left as is so
            // ssim(x, x) stays exactly 1.
            const double var_x = sxx.window(x0, y0, win) / n - mu_x * mu_x;
            const double var_y = syy.window(x0, y0, win) / n - mu_y * mu_y;
            const double cov = sxy.window(x0, y0, win) / n - mu_x * mu_y;
            const double num = (2.0 * (mu_x * mu_y) + kSsimC1) * (2.0 * cov + kSsimC2);
            const double den = (mu_x * mu_x + mu_y * mu_y + kSsimC1) * (var_x + var_y + kSsimC2);
            acc += num / den;
            windows++;
        }
    }
    return acc / static_cast<double>(windows);
}

SimilarityMatrix pairwise_ssim(const std::vector<GrayImage> &images,
                               const std::vector<ImageLabel> &labels) {
    if (images.size() < 2)
        throw std::invalid_argument("pairwise_ssim: need at least 2 images");
    if (labels.size() != images.size())
        throw std::invalid_argument("pairwise_ssim: labels/images size mismatch");
    for (const GrayImage &img : images)
        if (img.width != images[0].width || img.height != images[0].height)
            throw std::invalid_argument("pairwise_ssim: non-uniform dimensions");

    const int n = static_cast<int>(images.size());
    SimilarityMatrix matrix;
    matrix.n = n;
    matrix.labels = labels;
    matrix.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        matrix.values[static_cast<std::size_t>(i) * n + i] = 1.0;

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            pairs.emplace_back(i, j);

    parallel_for_index(pairs.size(), [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        const double value = ssim(images[i], images[j]);
        matrix.values[static_cast<std::size_t>(i) * n + j] = value;
        matrix.values[static_cast<std::size_t>(j) * n + i] = value;
    });
    return matrix;
}

void write_heatmap(const SimilarityMatrix &matrix, const std::filesystem::path &path) {
    const int cell = 14;
    const double vmin = *std::min_element(matrix.values.begin(), matrix.values.end());
    const double vmax = *std::max_element(matrix.values.begin(), matrix.values.end());
    const double range = vmax - vmin > 0.0 ? vmax - vmin : 1.0;

    plot::Canvas canvas(matrix.n * cell, matrix.n * cell);
    for (int i = 0; i < matrix.n; ++i)
        for (int j = 0; j < matrix.n; ++j) {
            const plot::Color c = plot::colormap((matrix.at(i, j) - vmin) / range);
            canvas.fill_rect(j * cell, i * cell, (j + 1) * cell - 1, (i + 1) * cell - 1, c);
        }
    write_png(canvas.image, path);

    nlohmann::json sidecar;
    sidecar["value_min"] = vmin;
    sidecar["value_max"] = vmax;
    sidecar["n"] = matrix.n;
    auto &labels = sidecar["labels"] = nlohmann::json::array();
    for (const ImageLabel &label : matrix.labels)
        labels.push_back(label.mode + "/" + std::to_string(label.index));
    write_json_file(sidecar, path.string() + ".json");
}

StandardizeResult standardize(const std::vector<std::vector<double>> &rows) {
    if (rows.size() < 2)
        throw std::invalid_argument("standardize: need at least 2 rows");
    const std::size_t dim = rows[0].size();
    for (const auto &row : rows)
        if (row.size() != dim)
            throw std::invalid_argument("standardize: ragged rows");

    StandardizeResult result;
    result.rows.assign(rows.size(), std::vector<double>(dim, 0.0));
    result.zero_variance.assign(dim, false);

    const double n = static_cast<double>(rows.size());
    for (std::size_t d = 0; d < dim; ++d) {
        double mean = 0.0;
        for (const auto &row : rows)
            mean += row[d];
        mean /= n;
        double var = 0.0;
        for (const auto &row : rows)
            var += (row[d] - mean) * (row[d] - mean);
        var /= n;
        if (var <= 0.0) {
            result.zero_variance[d] = true;
            continue; // leave the whole column at 0
        }
        const double inv_sd = 1.0 / std::sqrt(var);
        for (std::size_t r = 0; r < rows.size(); ++r)
            result.rows[r][d] = (rows[r][d] - mean) * inv_sd;
    }
    return result;
}

namespace {

// Cyclic Jacobi eigensolver for a symmetric matrix; returns eigenpairs
// sorted by descending eigenvalue. V starts as identity; its columns track
// the eigenvectors.
void jacobi_eigen(std::vector<double> &a, int d, std::vector<double> &eigenvalues,
                  std::vector<double> &vectors) {
    vectors.assign(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i)
        vectors[static_cast<std::size_t>(i) * d + i] = 1.0;
    auto A = [&](int i, int j) -> double & { return a[static_cast<std::size_t>(i) * d + j]; };
    auto V = [&](int i, int j) -> double & {
        return vectors[static_cast<std::size_t>(i) * d + j];
    };

    double scale = 0.0;
    for (int i = 0; i < d; ++i)
        scale = std::max(scale, std::abs(A(i, i)));
    const double tol = std::max(scale, 1.0) * 1e-14;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q)
                off += A(p, q) * A(p, q);
        if (std::sqrt(off) < tol)
            break;
        for (int p = 0; p < d; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) < tol * 1e-4)
                    continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < d; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < d; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    eigenvalues.resize(d);
    std::vector<int> order(d);
    for (int i = 0; i < d; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](int lhs, int rhs) { return A(lhs, lhs) > A(rhs, rhs); });

    std::vector<double> sorted_vectors(vectors.size());
    std::vector<double> sorted_values(d);
    for (int k = 0; k < d; ++k) {
        sorted_values[k] = A(order[k], order[k]);
        for (int i = 0; i < d; ++i)
            sorted_vectors[static_cast<std::size_t>(k) * d + i] = V(i, order[k]);
    }
    eigenvalues = std::move(sorted_values);
    vectors = std::move(sorted_vectors); // row k = eigenvector k
}

} // namespace

Embedding2D pca2(const std::vector<std::vector<double>> &rows) {
    if (rows.size() < 3)
        throw std::invalid_argument("pca2: need at least 3 rows");
    const int d = static_cast<int>(rows[0].size());
    if (d < 2)
        throw std::invalid_argument("pca2: need dimension >= 2");
    for (const auto &row : rows)
        if (static_cast<int>(row.size()) != d)
            throw std::invalid_argument("pca2: ragged rows");

    const std::size_t n = rows.size();
    std::vector<double> mean(d, 0.0);
    for (const auto &row : rows)
        for (int j = 0; j < d; ++j)
            mean[j] += row[j];
    for (double &m : mean)
        m /= static_cast<double>(n);

    // Sample covariance (1 / (n - 1)).
    std::vector<double> cov(static_cast<std::size_t>(d) * d, 0.0);
    for (const auto &row : rows)
        for (int i = 0; i < d; ++i) {
            const double di = row[i] - mean[i];
            for (int j = i; j < d; ++j)
                cov[static_cast<std::size_t>(i) * d + j] += di * (row[j] - mean[j]);
        }
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            const double v = cov[static_cast<std::size_t>(i) * d + j] / static_cast<double>(n - 1);
            cov[static_cast<std::size_t>(i) * d + j] = v;
            cov[static_cast<std::size_t>(j) * d + i] = v;
        }

    std::vector<double> eigenvalues, vectors;
    jacobi_eigen(cov, d, eigenvalues, vectors);

    Embedding2D embedding;
    for (int k = 0; k < 2; ++k) {
        std::vector<double> component(vectors.begin() + static_cast<std::size_t>(k) * d,
                                      vectors.begin() + static_cast<std::size_t>(k + 1) * d);
        // Sign fix: largest-magnitude entry positive.
        int argmax = 0;
        for (int j = 1; j < d; ++j)
            if (std::abs(component[j]) > std::abs(component[argmax]))
                argmax = j;
        if (component[argmax] < 0.0)
            for (double &v : component)
                v = -v;
        embedding.components[k] = std::move(component);
        embedding.explained_variance[k] = std::max(eigenvalues[k], 0.0);
    }

    embedding.points.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (int k = 0; k < 2; ++k) {
            double proj = 0.0;
            for (int j = 0; j < d; ++j)
                proj += (rows[r][j] - mean[j]) * embedding.components[k][j];
            embedding.points[r][k] = proj;
        }
    }
    return embedding;
}

KmeansResult kmeans(const std::vector<std::array<double, 2>> &points, int k, std::uint64_t seed,
                    int max_iter) {
    const std::size_t n = points.size();
    if (k < 1)
        throw std::invalid_argument("kmeans: k must be >= 1");
    if (static_cast<std::size_t>(k) > n)
        throw std::invalid_argument("kmeans: k exceeds the point count");

    auto dist2 = [](const std::array<double, 2> &a, const std::array<double, 2> &b) {
        const double dx = a[0] - b[0], dy = a[1] - b[1];
        return dx * dx + dy * dy;
    };

    // k-means++ seeding.
    rng::Xoshiro256 gen(seed);
    KmeansResult result;
    result.centroids.reserve(k);
    result.centroids.push_back(points[gen.uniform_below(n)]);
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    while (static_cast<int>(result.centroids.size()) < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], dist2(points[i], result.centroids.back()));
            total += nearest[i];
        }
        std::size_t chosen = 0;
        if (total > 0.0) {
            const double r = gen.uniform() * total;
            double cum = 0.0;
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += nearest[i];
                if (cum > r) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = gen.uniform_below(n); // all points coincide with a centroid
        }
        result.centroids.push_back(points[chosen]);
    }

    result.labels.assign(n, 0);
    std::vector<int> previous(n, -1);
    for (int iter = 0; iter < max_iter; ++iter) {
        // Assignment; ties go to the lowest centroid index.
        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = dist2(points[i], result.centroids[0]);
            for (int c = 1; c < k; ++c) {
                const double dc = dist2(points[i], result.centroids[c]);
                if (dc < best_d) {
                    best_d = dc;
                    best = c;
                }
            }
            result.labels[i] = best;
            objective += best_d;
        }
        result.objective_trace.push_back(objective);
        result.iterations = iter + 1;
        if (result.labels == previous)
            break;
        previous = result.labels;

        // Update step.
        std::vector<std::array<double, 2>> sums(k, {0.0, 0.0});
        std::vector<std::int64_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sums[result.labels[i]][0] += points[i][0];
            sums[result.labels[i]][1] += points[i][1];
            counts[result.labels[i]]++;
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                result.centroids[c] = {sums[c][0] / counts[c], sums[c][1] / counts[c]};
            } else {
                // Re-seed an empty cluster at the point farthest from its
                // assigned centroid (deterministic; lowest index on ties).
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double di = dist2(points[i], result.centroids[result.labels[i]]);
                    if (di > far_d) {
                        far_d = di;
                        far = i;
                    }
                }
                result.centroids[c] = points[far];
            }
        }
    }
    return result;
}

void write_scatter(const Embedding2D &embedding, const std::vector<std::string> &mode_tags,
                   const std::filesystem::path &path) {
    const int size = 520, margin = 30;
    plot::Canvas canvas(size, size);
    canvas.line(margin, size - margin, size - margin, size - margin, plot::kAxisGray);
    canvas.line(margin, margin, margin, size - margin, plot::kAxisGray);

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!embedding.points.empty()) {
        xmin = xmax = embedding.points[0][0];
        ymin = ymax = embedding.points[0][1];
        for (const auto &p : embedding.points) {
            xmin = std::min(xmin, p[0]);
            xmax = std::max(xmax, p[0]);
            ymin = std::min(ymin, p[1]);
            ymax = std::max(ymax, p[1]);
        }
    }
    const double xr = xmax - xmin > 0 ? xmax - xmin : 1.0;
    const double yr = ymax - ymin > 0 ? ymax - ymin : 1.0;

    std::vector<std::string> mode_order;
    for (const std::string &tag : mode_tags)
        if (std::find(mode_order.begin(), mode_order.end(), tag) == mode_order.end())
            mode_order.push_back(tag);

    for (std::size_t i = 0; i < embedding.points.size(); ++i) {
        const int px = margin + static_cast<int>(
                                    std::lround((embedding.points[i][0] - xmin) / xr *
                                                (size - 2 * margin)));
        const int py = size - margin -
                       static_cast<int>(std::lround((embedding.points[i][1] - ymin) / yr *
                                                    (size - 2 * margin)));
        const int cluster =
            i < embedding.cluster_labels.size() ? embedding.cluster_labels[i] : 0;
        const plot::Color color = plot::palette()[cluster % plot::palette().size()];
        plot::Canvas::Marker marker = plot::Canvas::Marker::Circle;
        if (i < mode_tags.size()) {
            const auto it = std::find(mode_order.begin(), mode_order.end(), mode_tags[i]);
            switch ((it - mode_order.begin()) % 4) {
            case 0:
                marker = plot::Canvas::Marker::Circle;
                break;
            case 1:
                marker = plot::Canvas::Marker::Square;
                break;
            case 2:
                marker = plot::Canvas::Marker::Triangle;
                break;
            default:
                marker = plot::Canvas::Marker::Diamond;
                break;
            }
        }
        canvas.marker(px, py, marker, 4, color);
    }
    write_png(canvas.image, path);

    nlohmann::json sidecar;
    sidecar["x_range"] = {xmin, xmax};
    sidecar["y_range"] = {ymin, ymax};
    sidecar["explained_variance"] = {embedding.explained_variance[0],
                                     embedding.explained_variance[1]};
    sidecar["marker_order"] = {"circle", "square", "triangle", "diamond"};
    sidecar["modes"] = mode_order;
    write_json_file(sidecar, path.string() + ".json");
}

void write_embedding_csv(const Embedding2D &embedding, const std::vector<ImageLabel> &labels,
                         const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out << "mode,index,pc1,pc2,cluster\n";
    char buf[64];
    const ImageLabel no_label;
    for (std::size_t i = 0; i < embedding.points.size(); ++i) {
        const ImageLabel &label = i < labels.size() ? labels[i] : no_label;
        out << label.mode << ',' << label.index << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", embedding.points[i][0]);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", embedding.points[i][1]);
        out << buf << ','
            << (i < embedding.cluster_labels.size() ? embedding.cluster_labels[i] : 0) << '\n';
    }
    if (!out)
        throw IoError("write failed: " + path.string());
}

} // namespace skyrtex::simil
