#pragma once

#include <vector>

namespace sfdbp {

/// Thin-lens camera and sensor parameters for one observation. Lengths in meters,
/// pixel scale in pixels per meter.
class CameraConfig {
public:
    CameraConfig(double aperture_radius, double lens_to_image, double focal_length,
                 double pixel_scale);

    double aperture_radius() const { return aperture_radius_; }
    double lens_to_image() const { return lens_to_image_; }
    double focal_length() const { return focal_length_; }
    double pixel_scale() const { return pixel_scale_; }

    /// Distance of the in-focus plane, 1/U = 1/F - 1/V.
    double focus_distance() const;

    bool operator==(const CameraConfig&) const = default;

private:
    double aperture_radius_;
    double lens_to_image_;
    double focal_length_;
    double pixel_scale_;
};

/// Gaussian PSF standard deviation in pixels. Zero is the delta PSF.
struct BlurSpec {
    double sigma = 0.0;
};

enum class BlurDirection {
    RefIsSharper,  ///< first operand is sharper; the second-operand image is matched by blurring the first
    RefIsBlurrier,
    Equal,
};

/// Blur relating two observations: sigma_r = sqrt(|sigma_b^2 - sigma_a^2|).
/// The direction names describe the first operand of relative_sigma().
struct RelativeBlur {
    double sigma_r = 0.0;
    BlurDirection direction = BlurDirection::Equal;
};

/// Below this sigma a truncated kernel is indistinguishable from a delta.
inline constexpr double kMinKernelSigma = 0.3;

/// sigma = rho * |r V (1/F - 1/V - 1/D)|. Throws DomainError for depth <= 0.
BlurSpec sigma_from_depth(double depth, const CameraConfig& cam);

RelativeBlur relative_sigma(BlurSpec a, BlurSpec b);

/// Separable, normalized, truncated Gaussian. The 2D kernel is the outer product of
/// taps() with itself; taps() has 2*radius()+1 entries and sums to one.
class GaussianKernel {
public:
    explicit GaussianKernel(BlurSpec spec);

    double sigma() const { return sigma_; }
    int radius() const { return radius_; }
    int size() const { return 2 * radius_ + 1; }
    const std::vector<double>& taps() const { return taps_; }

    /// 2D weight at integer offset (dx, dy); zero outside the support.
    double at(int dx, int dy) const;

    /// Row-major size() x size() dense kernel.
    std::vector<double> dense() const;

private:
    double sigma_;
    int radius_;
    std::vector<double> taps_;
};

/// Radius ceil(3 sigma); sigma below kMinKernelSigma yields the 1x1 identity.
GaussianKernel gaussian_kernel(BlurSpec spec);

}  // namespace sfdbp
