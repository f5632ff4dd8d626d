#pragma once

#include <string>
#include <vector>

#include "dds/develop.hpp"
#include "dds/layout.hpp"

namespace dds {

struct RenderStyle {
    std::vector<std::string> palette;  // one color per tile class; extended as needed
    double stroke_width = 1.5;
    bool show_chambers = false;
    std::string background = "#ffffff";
    int size_px = 512;

    static RenderStyle defaults();
};

struct RenderOptions {
    ModelKind model = ModelKind::Euclidean;
    // euclidean: half-width of the square region in units of the domain
    // diameter; poincare/klein: model disc radius
    double radius = 0.0;
    RenderStyle style = RenderStyle::defaults();
};

// Full pipeline: layout -> generators -> develop -> project -> SVG 1.1.
// Deterministic byte-for-byte for fixed inputs.
std::string render_svg(const DelaneySymbol& s, const RenderOptions& opt);

// Conventional output name: <trace-hash>.<model>.svg
std::string render_file_name(const DelaneySymbol& s, ModelKind model);

}  // namespace dds
