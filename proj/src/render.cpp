#include "nclam/render.hpp"

#include <cmath>
#include <cstdio>

#include "nclam/errors.hpp"
#include "nclam/geom.hpp"

namespace nclam {

RenderStyle RenderStyle::defaults() {
  RenderStyle s;
  s.layers[0] = {"#000000", 1.0, false};
  s.layers[1] = {"#cc2222", 0.8, true};
  s.layers[2] = {"#2255cc", 0.8, true};
  s.layers[3] = {"#22aa55", 0.8, true};
  return s;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

const RenderStyle::Layer& layer_for(const RenderStyle& style, int cls) {
  static const RenderStyle::Layer fallback{};
  const auto it = style.layers.find(cls);
  if (it != style.layers.end()) return it->second;
  const auto zero = style.layers.find(0);
  return zero != style.layers.end() ? zero->second : fallback;
}

}  // namespace

std::string render(const Lamination& lam, const RenderStyle& style, const std::vector<int>* chord_classes) {
  if (chord_classes && chord_classes->size() != lam.chords.size())
    throw DomainError("chord class vector size mismatch");
  const double size = static_cast<double>(style.canvas_px);
  const double r = 0.5 * size - style.margin_px;
  const double cx = 0.5 * size, cy = 0.5 * size;
  const auto map_point = [&](Index p) {
    const Vec2 v = circle_point(p, lam.m);
    return Vec2{cx + r * v.x, cy - r * v.y};
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.canvas_px) + "\" height=\"" +
         std::to_string(style.canvas_px) + "\" viewBox=\"0 0 " + std::to_string(style.canvas_px) + " " +
         std::to_string(style.canvas_px) + "\">\n";
  if (style.circle_outline) {
    svg += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) +
           "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"" + fmt(style.circle_width) + "\"/>\n";
  }
  for (std::size_t i = 0; i < lam.chords.size(); ++i) {
    const auto& [p, q] = lam.chords[i];
    const Vec2 a = map_point(p), b = map_point(q);
    const RenderStyle::Layer& L = layer_for(style, chord_classes ? (*chord_classes)[i] : 0);
    svg += "<line x1=\"" + fmt(a.x) + "\" y1=\"" + fmt(a.y) + "\" x2=\"" + fmt(b.x) + "\" y2=\"" + fmt(b.y) +
           "\" stroke=\"" + L.stroke + "\" stroke-width=\"" + fmt(L.width) + "\"";
    if (L.dashed) svg += " stroke-dasharray=\"4 3\"";
    svg += "/>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string render(const NoncrossingTree& nc, const RenderStyle& style) {
  return render(nc_to_lamination(nc), style, nullptr);
}

}  // namespace nclam
