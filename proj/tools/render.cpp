#include "render.hpp"

#include "cpat/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace cpat::cli {

namespace {

class Writer
{
public:
    explicit Writer(int precision)
        : precision_(precision)
    {
    }

    std::string num(double x) const
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", precision_, x);
        std::string s(buf);
        // "-0.0000" would differ from "0.0000" between platforms
        if (s.find_first_not_of("-0.") == std::string::npos) s = s.substr(s[0] == '-' ? 1 : 0);
        return s;
    }

private:
    int precision_;
};

}  // namespace

std::string render_svg(const CirclePattern& p, const RenderOptions& opts)
{
    if (p.mode != Mode::Euclidean) {
        throw Error(ErrorCode::InvalidInput, "render expects a euclidean pattern");
    }
    const int n = p.size();
    if (n == 0) throw Error(ErrorCode::InvalidInput, "empty pattern");

    double x0 = std::numeric_limits<double>::infinity();
    double y0 = x0;
    double x1 = -x0;
    double y1 = -x0;
    for (int v = 0; v < n; ++v) {
        const double r = p.radii[v];
        x0 = std::min(x0, p.centers[v].x() - r);
        x1 = std::max(x1, p.centers[v].x() + r);
        y0 = std::min(y0, p.centers[v].y() - r);
        y1 = std::max(y1, p.centers[v].y() + r);
    }
    const double pad = 0.05 * std::max(x1 - x0, y1 - y0);
    x0 -= pad;
    x1 += pad;
    y0 -= pad;
    y1 += pad;
    const double scale = opts.size / std::max(x1 - x0, y1 - y0);
    const double w = (x1 - x0) * scale;
    const double h = (y1 - y0) * scale;
    auto X = [&](double x) { return (x - x0) * scale; };
    auto Y = [&](double y) { return (y1 - y) * scale; };

    const Writer fmt(opts.precision);
    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt.num(w) + "\" height=\"" +
         fmt.num(h) + "\" viewBox=\"0 0 " + fmt.num(w) + " " + fmt.num(h) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const Triangulation& t = p.triangulation;
    if (opts.show_star) {
        s += "<g fill=\"none\" stroke=\"#9ab\" stroke-width=\"" + fmt.num(opts.stroke_width * 0.5) +
             "\">\n";
        for (int f = 0; f < t.face_count(); ++f) {
            if (f == p.marked_face) continue;
            const Face& fc = t.face(f);
            s += "<polygon points=\"";
            for (int k = 0; k < 3; ++k) {
                if (k) s += ' ';
                s += fmt.num(X(p.centers[fc[k]].x())) + "," + fmt.num(Y(p.centers[fc[k]].y()));
            }
            s += "\"/>\n";
        }
        s += "</g>\n";
    }

    s += "<g fill=\"none\" stroke=\"black\" stroke-width=\"" + fmt.num(opts.stroke_width) + "\">\n";
    for (int v = 0; v < n; ++v) {
        s += "<circle id=\"c" + std::to_string(v) + "\" cx=\"" + fmt.num(X(p.centers[v].x())) +
             "\" cy=\"" + fmt.num(Y(p.centers[v].y())) + "\" r=\"" + fmt.num(p.radii[v] * scale) +
             "\"/>\n";
    }
    s += "</g>\n";

    if (opts.show_contacts) {
        s += "<g stroke=\"#c33\" stroke-width=\"" + fmt.num(opts.stroke_width * 0.75) + "\">\n";
        for (const Edge& e : t.edges()) {
            s += "<line x1=\"" + fmt.num(X(p.centers[e.u].x())) + "\" y1=\"" +
                 fmt.num(Y(p.centers[e.u].y())) + "\" x2=\"" + fmt.num(X(p.centers[e.v].x())) +
                 "\" y2=\"" + fmt.num(Y(p.centers[e.v].y())) + "\"/>\n";
        }
        s += "</g>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace cpat::cli
