#pragma once

#include <map>
#include <string>
#include <vector>

#include "nclam/lamination.hpp"
#include "nclam/noncrossing.hpp"

namespace nclam {

// Chord classes pick the layer style: 0 base lamination (solid black),
// 1 triangulation chords (dashed red), 2+ iterated-level layers.
struct RenderStyle {
  int canvas_px = 800;
  double margin_px = 16.0;
  bool circle_outline = true;
  double circle_width = 1.0;

  struct Layer {
    std::string stroke = "#000000";
    double width = 1.0;
    bool dashed = false;
  };
  std::map<int, Layer> layers;

  static RenderStyle defaults();
};

// Deterministic SVG text: one line element per chord (plus the circle),
// endpoints at (cos(-2*pi*p/m), sin(-2*pi*p/m)), coordinates printed with
// fixed six decimals.
std::string render(const Lamination& lam, const RenderStyle& style,
                   const std::vector<int>* chord_classes = nullptr);
std::string render(const NoncrossingTree& nc, const RenderStyle& style);

}  // namespace nclam
