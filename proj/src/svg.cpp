#include "proxitop/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace proxitop::svg {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

const char* kRegionFill[] = {"#9ecae1", "#a1d99b", "#fdae6b", "#bcbddc",
                             "#fc9272", "#c7e9c0", "#fdd0a2", "#dadaeb"};

}  // namespace

std::string jordan_svg(const PlanarCurve& curve, const RegionLabeling& labeling) {
  const int nx = labeling.nx, ny = labeling.ny;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << nx << " " << ny
     << "\" width=\"640\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << nx << "\" height=\"" << ny
     << "\" fill=\"#ffffff\"/>\n";

  // Grid y runs upward, SVG y downward: cell (x, y) lands at row ny-1-y.
  for (int y = 0; y < ny; ++y) {
    for (int x = 0; x < nx; ++x) {
      const int lab = labeling.label_at(x, y);
      if (lab == 0) continue;
      const char* fill = lab < 0 ? "#555555"
                                 : kRegionFill[(lab - 1) % 8];
      os << "<rect x=\"" << x << "\" y=\"" << (ny - 1 - y)
         << "\" width=\"1\" height=\"1\" fill=\"" << fill << "\" fill-opacity=\""
         << (lab < 0 ? "0.9" : "0.5") << "\"/>\n";
    }
  }

  const double sw = 0.02 * std::max(nx, ny);
  auto sx = [&](double x) { return (x - labeling.origin.x) / labeling.cell; };
  auto sy = [&](double y) { return ny - (y - labeling.origin.y) / labeling.cell; };
  os << "<path d=\"";
  for (const Segment& s : curve.segments)
    os << "M " << fmt(sx(s.a.x)) << " " << fmt(sy(s.a.y)) << " L " << fmt(sx(s.b.x)) << " "
       << fmt(sy(s.b.y)) << " ";
  os << "\" stroke=\"#000000\" stroke-width=\"" << fmt(sw) << "\" fill=\"none\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string nerve_svg(const Cover& cover, const SimplicialComplex& nerve) {
  // One anchor per cover element: the mean position of its members.
  std::vector<Vec2> anchors;
  for (const Subset& el : cover.elements()) {
    Vec2 c{0.0, 0.0};
    for (int id : el) {
      const Vec2 p = cover.over_graph()
                         ? cover.graph().positions[static_cast<std::size_t>(id)]
                         : cover.space().point_at(cover.space().index_of(id)).xy;
      c.x += p.x;
      c.y += p.y;
    }
    const double n = static_cast<double>(el.size());
    anchors.push_back({c.x / n, c.y / n});
  }

  BBox box = BBox::of_point(anchors.empty() ? Vec2{0.0, 0.0} : anchors.front());
  for (const Vec2& a : anchors) box.expand(a);
  const double pad = 0.15 * std::max({box.hi.x - box.lo.x, box.hi.y - box.lo.y, 1.0});
  const double w = (box.hi.x - box.lo.x) + 2 * pad;
  const double h = (box.hi.y - box.lo.y) + 2 * pad;
  auto sx = [&](double x) { return x - box.lo.x + pad; };
  auto sy = [&](double y) { return h - (y - box.lo.y + pad); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h)
     << "\" width=\"640\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
     << "\" fill=\"#ffffff\"/>\n";

  // Triangles first so edges and vertices stay visible on top of them.
  for (const auto& s : nerve.simplices) {
    if (s.size() != 3) continue;
    os << "<polygon points=\"";
    for (std::size_t i = 0; i < 3; ++i) {
      const Vec2& a = anchors[static_cast<std::size_t>(s[i])];
      os << fmt(sx(a.x)) << "," << fmt(sy(a.y)) << (i + 1 < 3 ? " " : "");
    }
    os << "\" fill=\"#9ecae1\" fill-opacity=\"0.45\"/>\n";
  }
  const double sw = 0.008 * std::max(w, h);
  for (const auto& s : nerve.simplices) {
    if (s.size() != 2) continue;
    const Vec2& a = anchors[static_cast<std::size_t>(s[0])];
    const Vec2& b = anchors[static_cast<std::size_t>(s[1])];
    os << "<line x1=\"" << fmt(sx(a.x)) << "\" y1=\"" << fmt(sy(a.y)) << "\" x2=\""
       << fmt(sx(b.x)) << "\" y2=\"" << fmt(sy(b.y)) << "\" stroke=\"#333333\" stroke-width=\""
       << fmt(sw) << "\"/>\n";
  }
  const double r = 0.018 * std::max(w, h);
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    os << "<circle cx=\"" << fmt(sx(anchors[i].x)) << "\" cy=\"" << fmt(sy(anchors[i].y))
       << "\" r=\"" << fmt(r) << "\" fill=\"#e6550d\"/>\n";
    os << "<text x=\"" << fmt(sx(anchors[i].x) + 1.5 * r) << "\" y=\""
       << fmt(sy(anchors[i].y) - 1.5 * r) << "\" font-size=\"" << fmt(3 * r) << "\">" << i
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace proxitop::svg
