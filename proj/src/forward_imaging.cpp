#include "sfdbp/forward_imaging.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <random>

#include "sfdbp/filter.hpp"
#include "sfdbp/parallel.hpp"

namespace sfdbp {

namespace {

// Kernels shared between pixels with identical sigma.
class KernelCache {
public:
    const GaussianKernel* get(double sigma) {
        auto it = kernels_.find(sigma);
        if (it == kernels_.end())
            it = kernels_.emplace(sigma, std::make_unique<GaussianKernel>(BlurSpec{sigma})).first;
        return it->second.get();
    }

    int max_radius() const {
        int r = 0;
        for (const auto& [sigma, kernel] : kernels_) r = std::max(r, kernel->radius());
        return r;
    }

private:
    std::map<double, std::unique_ptr<GaussianKernel>> kernels_;
};

std::vector<const GaussianKernel*> per_pixel_kernels(const GroundTruthDepth& depth,
                                                     const CameraConfig& cam, KernelCache& cache) {
    std::vector<const GaussianKernel*> kernels(depth.size());
    for (std::size_t i = 0; i < depth.size(); ++i)
        kernels[i] = cache.get(sigma_from_depth(depth[i], cam).sigma);
    return kernels;
}

// Sum of taps whose position c + k lies inside [0, n).
double in_range_mass(const GaussianKernel& kernel, int c, int n) {
    const int r = kernel.radius();
    const int lo = std::max(-r, -c);
    const int hi = std::min(r, n - 1 - c);
    double mass = 0.0;
    for (int k = lo; k <= hi; ++k) mass += kernel.taps()[static_cast<std::size_t>(k + r)];
    return mass;
}

void check_shapes(const GrayImage& focused, const GroundTruthDepth& depth) {
    if (!focused.same_shape(depth))
        throw StructuralError("focused image and depth map dimensions differ");
    require_finite(focused, "focused image");
    require_valid_depth(depth);
}

}  // namespace

GrayImage space_variant_blur(const GrayImage& focused, const GroundTruthDepth& depth,
                             const CameraConfig& cam) {
    check_shapes(focused, depth);
    const int w = focused.width();
    const int h = focused.height();
    KernelCache cache;
    const auto kernels = per_pixel_kernels(depth, cam, cache);
    const int reach = cache.max_radius();

    // Border renormalization: each source's kernel carries unit mass inside the image.
    std::vector<double> scale(focused.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            scale[i] = 1.0 / (in_range_mass(*kernels[i], x, w) * in_range_mass(*kernels[i], y, h));
        }
    }

    // Evaluated per output pixel with a fixed source order, so the result does not depend
    // on how rows are distributed across threads.
    GrayImage out(w, h);
    parallel_for(0, h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            double num = 0.0;
            double den = 0.0;
            const int y0 = std::max(0, y - reach);
            const int y1 = std::min(h - 1, y + reach);
            const int x0 = std::max(0, x - reach);
            const int x1 = std::min(w - 1, x + reach);
            for (int sy = y0; sy <= y1; ++sy) {
                for (int sx = x0; sx <= x1; ++sx) {
                    const std::size_t s = static_cast<std::size_t>(sy) * w + sx;
                    const double weight = kernels[s]->at(x - sx, y - sy);
                    if (weight == 0.0) continue;
                    const double scaled = weight * scale[s];
                    num += scaled * focused[s];
                    den += scaled;
                }
            }
            out(x, y) = num / den;
        }
    });
    return out;
}

GrayImage equifocal_blur(const GrayImage& focused, const GroundTruthDepth& depth,
                         const CameraConfig& cam) {
    check_shapes(focused, depth);
    const int w = focused.width();
    const int h = focused.height();
    KernelCache cache;
    const auto kernels = per_pixel_kernels(depth, cam, cache);

    GrayImage out(w, h);
    parallel_for(0, h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const GaussianKernel& k = *kernels[static_cast<std::size_t>(y) * w + x];
            const int r = k.radius();
            double acc = 0.0;
            for (int dy = -r; dy <= r; ++dy) {
                const int sy = reflect101(y + dy, h);
                for (int dx = -r; dx <= r; ++dx)
                    acc += k.at(dx, dy) * focused(reflect101(x + dx, w), sy);
            }
            out(x, y) = acc;
        }
    });
    return out;
}

std::vector<GrayImage> render_observation_stack(const GrayImage& focused,
                                                const GroundTruthDepth& depth,
                                                const std::vector<CameraConfig>& cams,
                                                const RenderOptions& options) {
    if (cams.size() < 2) throw UsageError("at least two camera configurations are required");
    if (options.noise_sigma < 0.0) throw UsageError("noise sigma must be non-negative");

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> noise(0.0, options.noise_sigma > 0.0 ? options.noise_sigma : 1.0);

    std::vector<GrayImage> stack;
    stack.reserve(cams.size());
    for (const CameraConfig& cam : cams) {
        GrayImage g = options.model == RenderModel::SpaceVariant
                          ? space_variant_blur(focused, depth, cam)
                          : equifocal_blur(focused, depth, cam);
        if (options.noise_sigma > 0.0) {
            for (double& v : g.data()) v = std::clamp(v + noise(rng), 0.0, 1.0);
        }
        stack.push_back(std::move(g));
    }
    return stack;
}

}  // namespace sfdbp
