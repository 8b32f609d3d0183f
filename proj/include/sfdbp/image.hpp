#pragma once

#include <cstddef>
#include <vector>

#include "sfdbp/errors.hpp"

namespace sfdbp {

/// Row-major single-channel raster. Used for intensities, metric depths and cost slices.
template <typename T>
class Raster {
public:
    Raster() = default;
    Raster(int width, int height, T fill = T{})
        : width_(width), height_(height), data_(checked_size(width, height), fill) {}
    Raster(int width, int height, std::vector<T> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (data_.size() != checked_size(width, height))
            throw StructuralError("raster data length does not match width*height");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    T& operator()(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    const T& operator()(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    template <typename U>
    bool same_shape(const Raster<U>& other) const {
        return width_ == other.width() && height_ == other.height();
    }

    bool operator==(const Raster&) const = default;

private:
    static std::size_t checked_size(int width, int height) {
        if (width < 0 || height < 0) throw StructuralError("negative raster dimension");
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

/// Intensities in [0, 1].
using GrayImage = Raster<double>;
/// Metric depths in meters, strictly positive.
using GroundTruthDepth = Raster<double>;
/// Per-pixel label indices.
using LabelMap = Raster<int>;

/// Throws StructuralError if any sample is NaN or infinite.
void require_finite(const Raster<double>& image, const char* what);

/// Throws StructuralError if any depth is non-positive or non-finite.
void require_valid_depth(const GroundTruthDepth& depth);

}  // namespace sfdbp
