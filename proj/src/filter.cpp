#include "sfdbp/filter.hpp"

#include <cstddef>
#include <vector>

#include "sfdbp/parallel.hpp"

namespace sfdbp {

int reflect101(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - i;
}

GrayImage convolve_separable(const GrayImage& image, std::span<const double> taps) {
    if (taps.size() % 2 == 0) throw UsageError("separable kernel must have odd length");
    const int w = image.width();
    const int h = image.height();
    const int r = static_cast<int>(taps.size() / 2);
    if (r == 0 && taps[0] == 1.0) return image;

    GrayImage tmp(w, h);
    parallel_for(0, h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -r; k <= r; ++k)
                acc += taps[static_cast<std::size_t>(k + r)] * image(reflect101(x + k, w), y);
            tmp(x, y) = acc;
        }
    });
    GrayImage out(w, h);
    parallel_for(0, h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -r; k <= r; ++k)
                acc += taps[static_cast<std::size_t>(k + r)] * tmp(x, reflect101(y + k, h));
            out(x, y) = acc;
        }
    });
    return out;
}

GrayImage gaussian_blur(const GrayImage& image, BlurSpec spec) {
    const GaussianKernel kernel(spec);
    return convolve_separable(image, kernel.taps());
}

GrayImage box_mean(const GrayImage& image, int radius) {
    if (radius < 0) throw UsageError("box radius must be non-negative");
    if (radius == 0) return image;
    const std::vector<double> taps(static_cast<std::size_t>(2 * radius + 1),
                                   1.0 / static_cast<double>(2 * radius + 1));
    return convolve_separable(image, taps);
}

}  // namespace sfdbp
