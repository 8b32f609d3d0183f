#include "sfdbp/image.hpp"

#include <cmath>
#include <string>

namespace sfdbp {

void require_finite(const Raster<double>& image, const char* what) {
    for (double v : image.data()) {
        if (!std::isfinite(v)) throw StructuralError(std::string(what) + " contains non-finite values");
    }
}

void require_valid_depth(const GroundTruthDepth& depth) {
    for (double d : depth.data()) {
        if (!std::isfinite(d) || !(d > 0.0))
            throw StructuralError("depth map must be strictly positive and finite");
    }
}

}  // namespace sfdbp
