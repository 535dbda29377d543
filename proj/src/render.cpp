#include "torusmc/render.hpp"

#include "torusmc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace torusmc {

namespace {

struct Segment {
    Vec2 a, b;
};

// Pieces of the segment a -> b cut at lattice lines, each moved back into the
// fundamental parallelogram.
std::vector<Segment> wrap_segment(const TorusShape& shape, Vec2 a, Vec2 b) {
    const Vec2 la = shape.to_lattice(a);
    const Vec2 lb = shape.to_lattice(b);
    std::vector<double> cuts{0.0, 1.0};
    auto add_cuts = [&](double from, double to) {
        if (from == to) return;
        const double lo = std::min(from, to), hi = std::max(from, to);
        for (double line = std::ceil(lo); line <= hi; line += 1.0) {
            const double t = (line - from) / (to - from);
            if (t > 1e-12 && t < 1.0 - 1e-12) cuts.push_back(t);
        }
    };
    add_cuts(la.x, lb.x);
    add_cuts(la.y, lb.y);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) { return y - x <= 1e-12; }),
               cuts.end());
    std::vector<Segment> pieces;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Vec2 p = a + cuts[i] * (b - a);
        const Vec2 q = a + cuts[i + 1] * (b - a);
        const Vec2 mid = shape.to_lattice(0.5 * (p + q));
        const Vec2 back = shape.from_lattice({std::floor(mid.x), std::floor(mid.y)});
        pieces.push_back({p - back, q - back});
    }
    return pieces;
}

std::vector<IVec2> translations(std::int64_t patch) {
    if (patch <= 0) return {IVec2{}};
    const CoverRange range = CoverRange::square(patch);
    std::vector<IVec2> out;
    for (std::int64_t y = range.y0; y <= range.y1; ++y)
        for (std::int64_t x = range.x0; x <= range.x1; ++x) out.push_back({x, y});
    return out;
}

class Canvas {
public:
    Canvas(double scale) : scale_(scale) {}

    void include(Vec2 p) {
        lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
        hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
    }

    std::string x(double value) const { return fixed((value - lo_.x) * scale_ + margin); }
    std::string y(double value) const { return fixed((hi_.y - value) * scale_ + margin); }
    double width() const { return (hi_.x - lo_.x) * scale_ + 2 * margin; }
    double height() const { return (hi_.y - lo_.y) * scale_ + 2 * margin; }

    static std::string fixed(double value) {
        if (std::abs(value) < 5e-5) value = 0.0;
        char buffer[64];
        std::snprintf(buffer, sizeof buffer, "%.4f", value);
        return buffer;
    }

    static constexpr double margin = 20.0;

private:
    double scale_;
    Vec2 lo_{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi_{std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
};

struct Drawing {
    std::vector<std::vector<Vec2>> domains;
    std::vector<Segment> edges, dual_edges;
    std::vector<Vec2> vertices, dual_vertices;
    std::vector<std::pair<Vec2, double>> labels;
};

void add_graph(const TorusGraph& g, const std::vector<IVec2>& copies, bool wrap,
               std::vector<Segment>& edges, std::vector<Vec2>& vertices) {
    const TorusShape& shape = g.shape();
    for (const IVec2& t : copies) {
        const Vec2 offset = shape.translation(t);
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            const DartId d = reference_dart(e);
            const Vec2 a = g.position(g.tail(d));
            const Vec2 b = a + g.displacement(d);
            if (wrap) {
                for (const Segment& s : wrap_segment(shape, a, b)) edges.push_back(s);
            } else {
                edges.push_back({a + offset, b + offset});
            }
        }
        for (VertexId v = 0; v < g.num_vertices(); ++v) vertices.push_back(g.position(v) + offset);
    }
}

} // namespace

std::string render_svg(const TorusGraph& g, const RenderOptions& options, const TorusGraph* dual,
                       const VertexWeights* weights) {
    if (!(options.scale > 0.0) || !std::isfinite(options.scale))
        fail(ErrorKind::InvalidArgument, "render scale must be positive");
    if (options.patch < 0) fail(ErrorKind::InvalidArgument, "patch size must be non-negative");
    if (options.show_dual && !dual)
        fail(ErrorKind::InvalidArgument, "dual overlay requested without a dual graph");
    if (options.show_weights && (!weights || weights->size() != g.num_vertices()))
        fail(ErrorKind::InvalidArgument, "weight labels need one weight per vertex");

    const bool wrap = options.patch == 0;
    const auto copies = translations(options.patch);
    Drawing drawing;
    for (const IVec2& t : copies) {
        const TorusShape& shape = g.shape();
        const Vec2 o = shape.translation(t);
        drawing.domains.push_back({o, o + shape.u(), o + shape.u() + shape.v(), o + shape.v()});
    }
    add_graph(g, copies, wrap, drawing.edges, drawing.vertices);
    if (options.show_dual) add_graph(*dual, copies, wrap, drawing.dual_edges, drawing.dual_vertices);
    if (options.show_weights)
        for (const IVec2& t : copies)
            for (VertexId v = 0; v < g.num_vertices(); ++v)
                drawing.labels.push_back({g.position(v) + g.shape().translation(t), (*weights)[v]});

    Canvas canvas(options.scale);
    for (const auto& poly : drawing.domains)
        for (Vec2 p : poly) canvas.include(p);
    for (const auto* set : {&drawing.edges, &drawing.dual_edges})
        for (const Segment& s : *set) {
            canvas.include(s.a);
            canvas.include(s.b);
        }
    for (Vec2 p : drawing.vertices) canvas.include(p);
    for (Vec2 p : drawing.dual_vertices) canvas.include(p);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << Canvas::fixed(canvas.width()) << "\" height=\"" << Canvas::fixed(canvas.height())
        << "\">\n"
        << "<style>.domain{fill:none;stroke:#999;stroke-dasharray:4 3}"
           ".edge{stroke:#000;stroke-width:1.5}.vertex{fill:#000}"
           ".dual-edge{stroke:#c03;stroke-width:1}.dual-vertex{fill:#c03}"
           ".weight{font:10px sans-serif;fill:#036}</style>\n";
    for (const auto& poly : drawing.domains) {
        out << "<polygon class=\"domain\" points=\"";
        for (std::size_t i = 0; i < poly.size(); ++i)
            out << (i ? " " : "") << canvas.x(poly[i].x) << "," << canvas.y(poly[i].y);
        out << "\"/>\n";
    }
    auto lines = [&](const std::vector<Segment>& segments, const char* cls) {
        for (const Segment& s : segments)
            out << "<line class=\"" << cls << "\" x1=\"" << canvas.x(s.a.x) << "\" y1=\""
                << canvas.y(s.a.y) << "\" x2=\"" << canvas.x(s.b.x) << "\" y2=\""
                << canvas.y(s.b.y) << "\"/>\n";
    };
    auto dots = [&](const std::vector<Vec2>& points, const char* cls, double r) {
        for (Vec2 p : points)
            out << "<circle class=\"" << cls << "\" cx=\"" << canvas.x(p.x) << "\" cy=\""
                << canvas.y(p.y) << "\" r=\"" << Canvas::fixed(r) << "\"/>\n";
    };
    lines(drawing.edges, "edge");
    lines(drawing.dual_edges, "dual-edge");
    dots(drawing.vertices, "vertex", 3.0);
    dots(drawing.dual_vertices, "dual-vertex", 2.5);
    for (const auto& [p, w] : drawing.labels) {
        char text[64];
        std::snprintf(text, sizeof text, "%.6g", w);
        out << "<text class=\"weight\" x=\"" << canvas.x(p.x) << "\" y=\"" << canvas.y(p.y)
            << "\" dx=\"4\" dy=\"-4\">" << text << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace torusmc
