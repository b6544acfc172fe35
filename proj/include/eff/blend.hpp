#pragma once

#include "eff/field.hpp"
#include "eff/raster.hpp"

namespace eff {

enum class ResizePolicy { Strict, Bilinear };

/// Bilinear resampling with half-pixel-centered coordinate mapping.
/// Same target dimensions return the image unchanged.
RasterImage resize_bilinear(const RasterImage& img, int width, int height);

/// out = src*(1-w) + edited*w per pixel and channel in 32-bit float
/// arithmetic, rounded to nearest (ties away from zero). Weights exactly 0
/// copy the source byte verbatim and weights exactly 1 the edited byte, so
/// protected zones survive bit-for-bit. Under Strict a dimension mismatch of
/// the edited image is an error; under Bilinear it is resized to the source.
RasterImage blend(const RasterImage& src, const RasterImage& edited, const FidelityField& field,
                  ResizePolicy policy = ResizePolicy::Strict);

} // namespace eff
