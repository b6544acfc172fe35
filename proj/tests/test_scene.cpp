#include <doctest.h>

#include <fstream>

#include "eff/errors.hpp"
#include "eff/scene.hpp"
#include "test_util.hpp"

using namespace eff;
using test::TempDir;

namespace {

const char* kMinimalManifest = R"({
  "scenes": [
    {
      "scene_id": "s01",
      "category": "real",
      "source": "images/s01.png",
      "target_region_id": "r1",
      "target_text": "Entrance",
      "regions": [
        {"id": "r1", "text": "Exit", "quad": [[10, 10], [60, 10], [60, 30], [10, 30]]},
        {"id": "r2", "text": "60", "quad": [[70.5, 42.25], [90, 42], [90, 60], [70, 60]]}
      ]
    }
  ]
})";

std::filesystem::path write_manifest(const TempDir& dir, const std::string& body) {
    const std::filesystem::path path = dir.path / "manifest.json";
    std::ofstream(path) << body;
    return path;
}

} // namespace

TEST_CASE("minimal manifest loads with roles assigned") {
    TempDir dir("scene");
    const Manifest m = load_manifest(write_manifest(dir, kMinimalManifest));
    REQUIRE(m.scenes.size() == 1);
    const SceneSpec& scene = m.scenes[0];
    CHECK(scene.regions.size() == 2);
    CHECK(scene.target().id == "r1");
    CHECK(scene.target().role == Role::Target);
    CHECK(scene.regions[1].role == Role::NonTarget);
    CHECK(scene.non_targets().size() == 1);
    CHECK(scene.regions[1].quad.v[0].x == doctest::Approx(70.5));
    CHECK_FALSE(scene.edited_ref.has_value());
    CHECK(m.resolve(scene.source_ref) == dir.path / "images/s01.png");
}

TEST_CASE("duplicate region ids are rejected") {
    TempDir dir("scene");
    std::string body = kMinimalManifest;
    body.replace(body.find("\"r2\""), 4, "\"r1\"");
    CHECK_THROWS_AS(load_manifest(write_manifest(dir, body)), ManifestError);
}

TEST_CASE("target id missing from regions is rejected") {
    TempDir dir("scene");
    std::string body = kMinimalManifest;
    body.replace(body.find("\"r1\","), 5, "\"rX\","); // target_region_id: "rX"
    CHECK_THROWS_AS(load_manifest(write_manifest(dir, body)), ManifestError);
}

TEST_CASE("multiple Target roles fail validation") {
    SceneSpec scene;
    scene.scene_id = "bad";
    scene.category = "test";
    scene.source_ref = "x.png";
    scene.target_region_id = "a";
    scene.target_text = "t";
    TextRegion a{"a", test::rect_quad(0, 0, 4, 4), "A", Role::Target};
    TextRegion b{"b", test::rect_quad(8, 8, 4, 4), "B", Role::Target};
    scene.regions = {a, b};
    CHECK_THROWS_WITH_AS(validate_scene(scene),
                         doctest::Contains("exactly one Target"), ManifestError);
}

TEST_CASE("parse errors carry location context") {
    TempDir dir("scene");
    CHECK_THROWS_WITH_AS(load_manifest(write_manifest(dir, "{ not json")),
                         doctest::Contains("parse error"), ManifestError);

    std::string body = kMinimalManifest;
    body.replace(body.find("[[10, 10]"), 9, "[[10]"); // malformed quad point
    CHECK_THROWS_WITH_AS(load_manifest(write_manifest(dir, body)),
                         doctest::Contains("regions[0]"), ManifestError);
}

TEST_CASE("manifest round-trip is a fixpoint") {
    TempDir dir("scene");
    std::string body = kMinimalManifest;
    // exercise the optional fields too
    body.replace(body.find("\"target_region_id\""), 0,
                 "\"edited\": \"images/s01_edit.png\",\n      ");
    const Manifest first = load_manifest(write_manifest(dir, body));

    const std::filesystem::path saved = dir.path / "saved.json";
    save_manifest(saved, first.scenes);
    const Manifest second = load_manifest(saved);
    CHECK(first.scenes == second.scenes);

    save_manifest(dir.path / "saved2.json", second.scenes);
    CHECK(test::read_file(saved) == test::read_file(dir.path / "saved2.json"));
}

TEST_CASE("edited_ocr map survives the round trip") {
    TempDir dir("scene");
    std::string body = kMinimalManifest;
    body.replace(body.find("\"regions\""), 0,
                 "\"edited_ocr\": {\"r1\": \"Entrance\", \"r2\": \"\"},\n      ");
    const Manifest m = load_manifest(write_manifest(dir, body));
    REQUIRE(m.scenes[0].edited_ocr.has_value());
    CHECK(m.scenes[0].edited_ocr->at("r1") == "Entrance");
    CHECK(m.scenes[0].edited_ocr->at("r2") == "");

    save_manifest(dir.path / "saved.json", m.scenes);
    CHECK(load_manifest(dir.path / "saved.json").scenes == m.scenes);
}

TEST_CASE("field config validation") {
    FieldConfig config;
    CHECK_NOTHROW(config.validate());
    config.sigma = 0.0;
    CHECK_THROWS_AS(config.validate(), ConfigError);
    config = FieldConfig{};
    config.psnr_cap = config.psnr_threshold;
    CHECK_THROWS_AS(config.validate(), ConfigError);
    config = FieldConfig{};
    config.pad_core = -1.0;
    CHECK_THROWS_AS(config.validate(), ConfigError);
}
