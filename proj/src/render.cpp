#include "proxmesh/render.hpp"

#include <cstdio>
#include <sstream>

namespace proxmesh {

namespace {

const char* const kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

class Canvas {
public:
    explicit Canvas(const BBox& box) : box_(box) {
        const Rational w = box.hi.x - box.lo.x, h = box.hi.y - box.lo.y;
        scale_ = Rational(1000) / (w > h ? w : h);
        width_ = to_double(w * scale_);
        height_ = to_double(h * scale_);
    }

    double width() const { return width_; }
    double height() const { return height_; }
    std::string x(const Point2& p) const { return num(to_double((p.x - box_.lo.x) * scale_)); }
    std::string y(const Point2& p) const { return num(to_double((box_.hi.y - p.y) * scale_)); }

    std::string points(const std::vector<Point2>& pts) const {
        std::string out;
        for (const auto& p : pts) out += (out.empty() ? "" : " ") + x(p) + "," + y(p);
        return out;
    }

    std::string line(const Point2& a, const Point2& b) const {
        return "<line x1=\"" + x(a) + "\" y1=\"" + y(a) + "\" x2=\"" + x(b) + "\" y2=\"" + y(b) + "\"/>";
    }

private:
    BBox box_;
    Rational scale_;
    double width_ = 0;
    double height_ = 0;
};

} // namespace

std::string render_svg(const Mesh& mesh, const RenderOptions& options) {
    const Canvas canvas(mesh.clip_box());
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(canvas.width()) << "\" height=\""
        << num(canvas.height()) << "\" viewBox=\"0 0 " << num(canvas.width()) << " " << num(canvas.height())
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    if (options.voronoi) {
        out << "<g id=\"voronoi\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\">\n";
        for (const auto& region : mesh.voronoi())
            out << "<polygon points=\"" << canvas.points(region.cell.vertices()) << "\"/>\n";
        out << "</g>\n";
    }

    out << "<g id=\"mesh\" stroke=\"#333333\" stroke-width=\"1.5\">\n";
    for (const auto& [edge, tris] : mesh.edges()) out << canvas.line(mesh.point(edge.first), mesh.point(edge.second)) << "\n";
    out << "</g>\n";

    for (std::size_t k = 0; k < options.highlights.size(); ++k) {
        const SubComplex& c = options.highlights[k];
        const char* color = kPalette[k % std::size(kPalette)];
        out << "<g id=\"highlight-" << k << "\" fill=\"" << color << "\" stroke=\"" << color << "\">\n";
        for (int t : c.triangles()) {
            const auto& v = mesh.triangle(t).v;
            out << "<polygon fill-opacity=\"0.35\" stroke=\"none\" points=\""
                << canvas.points({mesh.point(v[0]), mesh.point(v[1]), mesh.point(v[2])}) << "\"/>\n";
        }
        for (const auto& [p, q] : c.edges())
            out << "<g stroke-width=\"4\">" << canvas.line(mesh.point(p), mesh.point(q)) << "</g>\n";
        for (int v : c.vertices())
            out << "<circle r=\"7\" cx=\"" << canvas.x(mesh.point(v)) << "\" cy=\"" << canvas.y(mesh.point(v)) << "\"/>\n";
        out << "</g>\n";
    }

    out << "<g id=\"sites\" font-family=\"sans-serif\" font-size=\"14\">\n";
    for (int i = 0; i < static_cast<int>(mesh.sites().size()); ++i) {
        const Point2& p = mesh.point(i);
        out << "<circle r=\"3.5\" fill=\"black\" cx=\"" << canvas.x(p) << "\" cy=\"" << canvas.y(p) << "\"/>"
            << "<text x=\"" << canvas.x(p) << "\" y=\"" << canvas.y(p) << "\" dx=\"5\" dy=\"-5\">" << i << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

} // namespace proxmesh
