#include "sfdbp/defocus_model.hpp"

#include <cmath>
#include <string>

#include "sfdbp/errors.hpp"

namespace sfdbp {

CameraConfig::CameraConfig(double aperture_radius, double lens_to_image, double focal_length,
                           double pixel_scale)
    : aperture_radius_(aperture_radius),
      lens_to_image_(lens_to_image),
      focal_length_(focal_length),
      pixel_scale_(pixel_scale) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(aperture_radius) || !positive(lens_to_image) || !positive(focal_length) ||
        !positive(pixel_scale)) {
        throw DomainError("camera parameters r, V, F, rho must be positive and finite");
    }
    if (!(lens_to_image > focal_length)) {
        throw DomainError("lens-to-image distance V must exceed focal length F (V=" +
                          std::to_string(lens_to_image) + ", F=" + std::to_string(focal_length) +
                          ")");
    }
}

double CameraConfig::focus_distance() const {
    return 1.0 / (1.0 / focal_length_ - 1.0 / lens_to_image_);
}

BlurSpec sigma_from_depth(double depth, const CameraConfig& cam) {
    if (!(depth > 0.0) || !std::isfinite(depth)) {
        throw DomainError("depth must be positive and finite, got " + std::to_string(depth));
    }
    const double radius = cam.aperture_radius() * cam.lens_to_image() *
                          (1.0 / cam.focal_length() - 1.0 / cam.lens_to_image() - 1.0 / depth);
    return BlurSpec{cam.pixel_scale() * std::abs(radius)};
}

RelativeBlur relative_sigma(BlurSpec a, BlurSpec b) {
    const double sa = std::abs(a.sigma);
    const double sb = std::abs(b.sigma);
    if (sa == sb) return {0.0, BlurDirection::Equal};
    // (b - a)(b + a) keeps precision when the two sigmas are close.
    const double sigma_r = std::sqrt(std::abs((sb - sa) * (sb + sa)));
    return {sigma_r, sa < sb ? BlurDirection::RefIsSharper : BlurDirection::RefIsBlurrier};
}

GaussianKernel::GaussianKernel(BlurSpec spec) : sigma_(spec.sigma), radius_(0), taps_{1.0} {
    if (!(sigma_ >= kMinKernelSigma)) {
        sigma_ = 0.0;
        return;
    }
    radius_ = static_cast<int>(std::ceil(3.0 * sigma_));
    taps_.assign(static_cast<std::size_t>(2 * radius_ + 1), 0.0);
    const double inv = 1.0 / (2.0 * sigma_ * sigma_);
    double sum = 0.0;
    for (int i = -radius_; i <= radius_; ++i) {
        const double v = std::exp(-static_cast<double>(i * i) * inv);
        taps_[static_cast<std::size_t>(i + radius_)] = v;
        sum += v;
    }
    for (double& v : taps_) v /= sum;
}

double GaussianKernel::at(int dx, int dy) const {
    if (dx < -radius_ || dx > radius_ || dy < -radius_ || dy > radius_) return 0.0;
    return taps_[static_cast<std::size_t>(dx + radius_)] *
           taps_[static_cast<std::size_t>(dy + radius_)];
}

std::vector<double> GaussianKernel::dense() const {
    std::vector<double> out;
    out.reserve(taps_.size() * taps_.size());
    for (double wy : taps_)
        for (double wx : taps_) out.push_back(wx * wy);
    return out;
}

GaussianKernel gaussian_kernel(BlurSpec spec) { return GaussianKernel(spec); }

}  // namespace sfdbp
