#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "eff/geometry.hpp"
#include "eff/scene.hpp"

namespace eff::test {

/// Unique scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path = std::filesystem::temp_directory_path() /
               ("eff_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline Quad rect_quad(double x, double y, double w, double h) {
    return Quad{{Vec2{x, y}, Vec2{x + w, y}, Vec2{x + w, y + h}, Vec2{x, y + h}}};
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Small random scene on a wxh grid: one target plus extra non-target quads
/// (axis-aligned with sub-pixel offsets, occasionally rotated).
inline SceneSpec random_scene(std::mt19937_64& rng, int width, int height, int region_count) {
    auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) / 9007199254740992.0);
    };
    SceneSpec scene;
    scene.scene_id = "random";
    scene.category = "test";
    scene.source_ref = "unused.png";
    scene.target_text = "NEW";
    for (int i = 0; i < region_count; ++i) {
        TextRegion region;
        region.id = "r" + std::to_string(i + 1);
        region.text = "T" + std::to_string(i + 1);
        if (i == 0) {
            // target: axis-aligned and fully inside so the core never degenerates
            const double w = uniform(4.0, width / 2.0);
            const double h = uniform(4.0, height / 2.0);
            const double x = uniform(1.0, width - w - 1.0);
            const double y = uniform(1.0, height - h - 1.0);
            region.quad = rect_quad(x, y, w, h);
            region.role = Role::Target;
            scene.regions.push_back(std::move(region));
            continue;
        }
        const double w = uniform(3.0, width / 2.0);
        const double h = uniform(3.0, height / 2.0);
        const double x = uniform(-2.0, width - w + 2.0);
        const double y = uniform(-2.0, height - h + 2.0);
        if ((rng() & 3u) == 0) {
            // slanted quad
            const double skew = uniform(0.0, 4.0);
            region.quad = Quad{{Vec2{x + skew, y}, Vec2{x + w, y + skew}, Vec2{x + w - skew, y + h},
                                Vec2{x, y + h - skew}}};
        } else {
            region.quad = rect_quad(x, y, w, h);
        }
        region.role = Role::NonTarget;
        scene.regions.push_back(std::move(region));
    }
    scene.target_region_id = "r1";
    return scene;
}

} // namespace eff::test
