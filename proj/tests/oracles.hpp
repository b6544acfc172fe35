// Independent brute-force references used to check the production kernels.
// Everything here is deliberately naive: O(n^2 m) scans, dense convolutions,
// full DP tables. None of it shares code with the implementation under test.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eff/field.hpp"
#include "eff/geometry.hpp"
#include "eff/raster.hpp"
#include "eff/scene.hpp"

namespace eff::oracle {

/// Winding-number point-in-polygon (the implementation uses crossing
/// parity); boundary points count as inside.
bool point_in_polygon_winding(const std::vector<Vec2>& poly, Vec2 p);

/// Rasterization by testing every pixel center independently.
BinaryMask rasterize_brute(const Quad& quad, int width, int height);

/// Dilation by scanning all set pixels for each output pixel.
BinaryMask pad_brute(const BinaryMask& mask, double pad);

/// Distance to the nearest set pixel by full scan.
std::vector<double> distance_brute(const BinaryMask& mask);

/// Dense per-pixel evaluation of the whole field recipe: padded core
/// indicator, exponential decay from the padded core, padded protect masks,
/// dense 2-D Gaussian convolution with replicate edges, re-enforcement,
/// clamp. Computed entirely in double.
std::vector<double> field_brute(const SceneSpec& scene, const FieldConfig& config, int width,
                                int height);

/// Dense 2-D convolution with the outer-product Gaussian kernel.
std::vector<double> gaussian_2d_brute(const std::vector<double>& input, int width, int height,
                                      double sigma);

/// Full-matrix Levenshtein distance.
std::size_t levenshtein_matrix(const std::string& a, const std::string& b);

/// Reference spillover protocol: returns {text_changed, psnr_flag, spillover}
/// recomputed from first principles.
struct SpilloverRef {
    std::optional<bool> text_changed;
    bool psnr_flag = false;
    bool spillover = false;
};
SpilloverRef spillover_protocol_brute(const std::string& text_src,
                                      const std::optional<std::string>& text_out, double psnr,
                                      const FieldConfig& config);

} // namespace eff::oracle
