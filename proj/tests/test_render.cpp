#include <doctest.h>

#include <string>

#include "nclam/errors.hpp"
#include "nclam/json_io.hpp"
#include "nclam/lamination.hpp"
#include "nclam/render.hpp"
#include "nclam/samplers.hpp"

using namespace nclam;

namespace {

std::size_t count_substr(const std::string& hay, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

TEST_CASE("empty lamination renders just the circle") {
  Lamination empty;
  empty.m = 1;
  const std::string svg = render(empty, RenderStyle::defaults());
  CHECK(count_substr(svg, "<line") == 0);
  CHECK(count_substr(svg, "<circle") == 1);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.rfind("</svg>") != std::string::npos);
}

TEST_CASE("triangle renders three lines") {
  Lamination tri;
  tri.m = 3;
  tri.add(0, 1);
  tri.add(1, 2);
  tri.add(2, 0);
  tri.finish();
  const std::string svg = render(tri, RenderStyle::defaults());
  CHECK(count_substr(svg, "<line") == 3);
}

TEST_CASE("rendering is byte deterministic") {
  Rng rng = Rng::from_seed(7);
  const StableOffspring law(1.5);
  const PlaneTree tree = sample_bgw_conditioned(law, 200, rng);
  const Lamination lam = triangulate(encode(tree), uniform_decoration(tree, rng));
  const std::string a = render(lam, RenderStyle::defaults());
  const std::string b = render(lam, RenderStyle::defaults());
  CHECK(a == b);
  CHECK(count_substr(a, "<line") == lam.chords.size());
}

TEST_CASE("chord classes pick layer styles") {
  Lamination two;
  two.m = 4;
  two.add(0, 2);
  two.add(1, 2);
  two.finish();
  const std::vector<int> classes{0, 1};
  const std::string svg = render(two, RenderStyle::defaults(), &classes);
  CHECK(count_substr(svg, "stroke-dasharray") == 1);
  const std::vector<int> wrong{0};
  CHECK_THROWS_AS(render(two, RenderStyle::defaults(), &wrong), Error);
}

TEST_CASE("coordinates stay within the canvas") {
  Lamination lam;
  lam.m = 12;
  for (Index p = 0; p < 6; ++p) lam.add(p, p + 6);
  lam.finish();
  const RenderStyle style = RenderStyle::defaults();
  const std::string svg = render(lam, style);
  std::size_t pos = 0;
  while ((pos = svg.find("x1=\"", pos)) != std::string::npos) {
    pos += 4;
    const double v = std::stod(svg.substr(pos));
    CHECK(v >= 0.0);
    CHECK(v <= style.canvas_px);
  }
}

TEST_CASE("golden bytes for a fixed pipeline") {
  // small frozen sample: seed 1, chain of 3 triangulated with zero labels
  const Lamination tri = triangulate(encode(PlaneTree{{1, 1, 0}}), JumpsLabelling::zero());
  RenderStyle style = RenderStyle::defaults();
  style.canvas_px = 100;
  style.margin_px = 10.0;
  const std::string svg = render(tri, style);
  const std::string expect =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"100\" height=\"100\" viewBox=\"0 0 100 100\">\n"
      "<circle cx=\"50.000000\" cy=\"50.000000\" r=\"40.000000\" fill=\"none\" stroke=\"#888888\" "
      "stroke-width=\"1.000000\"/>\n"
      "<line x1=\"90.000000\" y1=\"50.000000\" x2=\"30.000000\" y2=\"84.641016\" stroke=\"#000000\" "
      "stroke-width=\"1.000000\"/>\n"
      "<line x1=\"90.000000\" y1=\"50.000000\" x2=\"30.000000\" y2=\"15.358984\" stroke=\"#000000\" "
      "stroke-width=\"1.000000\"/>\n"
      "<line x1=\"30.000000\" y1=\"84.641016\" x2=\"30.000000\" y2=\"15.358984\" stroke=\"#000000\" "
      "stroke-width=\"1.000000\"/>\n"
      "</svg>\n";
  CHECK(svg == expect);
}
