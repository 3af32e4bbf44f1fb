#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace speccl::svgplot {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
    double span() const { return hi - lo; }
};

Range padded_range(const std::vector<double>& values, double pad_fraction) {
    Range r;
    if (values.empty()) return r;
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    r.lo = *mn;
    r.hi = *mx;
    if (r.hi == r.lo) {
        r.lo -= 0.5;
        r.hi += 0.5;
    }
    const double pad = (r.hi - r.lo) * pad_fraction;
    r.lo -= pad;
    r.hi += pad;
    return r;
}

class Canvas {
public:
    Canvas(Range x, Range y) : x_(x), y_(y) {}

    double px(double x) const {
        return kLeft + (x - x_.lo) / x_.span() * (kWidth - kLeft - kRight);
    }
    double py(double y) const {
        return kHeight - kBottom - (y - y_.lo) / y_.span() * (kHeight - kTop - kBottom);
    }
    const Range& xr() const { return x_; }
    const Range& yr() const { return y_; }

private:
    Range x_;
    Range y_;
};

std::vector<double> ticks(const Range& r, std::size_t target = 5) {
    const double raw = r.span() / static_cast<double>(target);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> out;
    const double first = std::ceil(r.lo / step) * step;
    for (double t = first; t <= r.hi + step * 1e-9; t += step) {
        out.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    }
    return out;
}

std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void open_svg(std::string& out, const ChartSpec& spec) {
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth, "%.0f") +
           "\" height=\"" + fmt(kHeight, "%.0f") + "\" viewBox=\"0 0 " + fmt(kWidth, "%.0f") +
           " " + fmt(kHeight, "%.0f") + "\">\n";
    if (spec.marked_x && !spec.marked_name.empty()) {
        out += "<!-- " + spec.marked_name + "=" + tick_label(*spec.marked_x) + " -->\n";
    }
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(kWidth / 2.0) +
           "\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">" +
           escape_xml(spec.title) + "</text>\n";
}

void draw_axes(std::string& out, const Canvas& canvas, const ChartSpec& spec) {
    const double x0 = kLeft;
    const double x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom;
    const double y1 = kTop;
    out += "<g stroke=\"#333\" stroke-width=\"1\">\n";
    out += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x1) + "\" y2=\"" +
           fmt(y0) + "\"/>\n";
    out += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x0) + "\" y2=\"" +
           fmt(y1) + "\"/>\n";
    out += "</g>\n";

    out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double t : ticks(canvas.xr())) {
        const double x = canvas.px(t);
        out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
               fmt(y0 + 4.0) + "\" stroke=\"#333\"/>\n";
        out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y0 + 18.0) + "\" text-anchor=\"middle\">" +
               tick_label(t) + "</text>\n";
    }
    for (double t : ticks(canvas.yr())) {
        const double y = canvas.py(t);
        out += "<line x1=\"" + fmt(x0 - 4.0) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(x0) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#333\"/>\n";
        out += "<text x=\"" + fmt(x0 - 8.0) + "\" y=\"" + fmt(y + 4.0) +
               "\" text-anchor=\"end\">" + tick_label(t) + "</text>\n";
    }
    out += "</g>\n";

    out += "<text x=\"" + fmt((x0 + x1) / 2.0) + "\" y=\"" + fmt(kHeight - 14.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
           escape_xml(spec.x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + fmt((y0 + y1) / 2.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           fmt((y0 + y1) / 2.0) + ")\">" + escape_xml(spec.y_label) + "</text>\n";
}

void draw_marker_rule(std::string& out, const Canvas& canvas, const ChartSpec& spec) {
    if (!spec.marked_x) return;
    const double x = canvas.px(*spec.marked_x);
    out += "<line class=\"marked\" x1=\"" + fmt(x) + "\" y1=\"" + fmt(kHeight - kBottom) +
           "\" x2=\"" + fmt(x) + "\" y2=\"" + fmt(kTop) +
           "\" stroke=\"#cc2222\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
}

}  // namespace

std::string line_chart(const ChartSpec& spec) {
    std::string out;
    open_svg(out, spec);
    Canvas canvas(padded_range(spec.x, 0.04), padded_range(spec.y, 0.08));
    draw_axes(out, canvas, spec);
    if (!spec.x.empty()) {
        std::string points;
        for (std::size_t i = 0; i < spec.x.size(); ++i) {
            if (i > 0) points += ' ';
            points += fmt(canvas.px(spec.x[i])) + "," + fmt(canvas.py(spec.y[i]));
        }
        out += "<polyline fill=\"none\" stroke=\"#2266cc\" stroke-width=\"1.5\" points=\"" +
               points + "\"/>\n";
        for (std::size_t i = 0; i < spec.x.size(); ++i) {
            out += "<circle class=\"pt\" cx=\"" + fmt(canvas.px(spec.x[i])) + "\" cy=\"" +
                   fmt(canvas.py(spec.y[i])) + "\" r=\"2.5\" fill=\"#2266cc\"/>\n";
        }
    }
    draw_marker_rule(out, canvas, spec);
    out += "</svg>\n";
    return out;
}

std::string bar_chart(const ChartSpec& spec) {
    std::string out;
    open_svg(out, spec);
    std::vector<double> y_with_zero = spec.y;
    y_with_zero.push_back(0.0);
    Canvas canvas(padded_range(spec.x, 0.04), padded_range(y_with_zero, 0.08));
    draw_axes(out, canvas, spec);
    const double slot = spec.x.size() > 1
                            ? (canvas.px(spec.x[1]) - canvas.px(spec.x[0]))
                            : (kWidth - kLeft - kRight);
    const double width = std::max(2.0, slot * 0.6);
    const double base = canvas.py(0.0);
    for (std::size_t i = 0; i < spec.x.size(); ++i) {
        const double top = canvas.py(spec.y[i]);
        out += "<rect class=\"bar\" x=\"" + fmt(canvas.px(spec.x[i]) - width / 2.0) + "\" y=\"" +
               fmt(std::min(top, base)) + "\" width=\"" + fmt(width) + "\" height=\"" +
               fmt(std::abs(base - top)) + "\" fill=\"#44aa66\"/>\n";
    }
    draw_marker_rule(out, canvas, spec);
    out += "</svg>\n";
    return out;
}

}  // namespace speccl::svgplot
