#include "gf/svg.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gf {

std::string svg_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

namespace {

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

SvgCanvas::SvgCanvas(double x_lo, double x_hi, double y_lo, double y_hi,
                     const std::string& title)
    : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi) {
    if (!(x_lo < x_hi) || !(y_lo < y_hi))
        throw std::invalid_argument("SvgCanvas: empty world window");
    if (!title.empty())
        text_px(kWidth / 2.0, 24.0, title, 17.0, "#111111", "middle");
}

double SvgCanvas::px(double x) const {
    return m_left_ + (x - x_lo_) / (x_hi_ - x_lo_) * (kWidth - m_left_ - m_right_);
}

double SvgCanvas::py(double y) const {
    return kHeight - m_bottom_ -
           (y - y_lo_) / (y_hi_ - y_lo_) * (kHeight - m_top_ - m_bottom_);
}

void SvgCanvas::line(double x1, double y1, double x2, double y2,
                     const std::string& stroke, double width,
                     const std::string& dash) {
    body_ += "<line x1=\"" + svg_num(px(x1)) + "\" y1=\"" + svg_num(py(y1)) +
             "\" x2=\"" + svg_num(px(x2)) + "\" y2=\"" + svg_num(py(y2)) +
             "\" stroke=\"" + stroke + "\" stroke-width=\"" + svg_num(width) + "\"";
    if (!dash.empty()) body_ += " stroke-dasharray=\"" + dash + "\"";
    body_ += "/>\n";
}

void SvgCanvas::circle(double x, double y, double radius_px, const std::string& fill,
                       const std::string& stroke) {
    body_ += "<circle cx=\"" + svg_num(px(x)) + "\" cy=\"" + svg_num(py(y)) +
             "\" r=\"" + svg_num(radius_px) + "\" fill=\"" + fill + "\"";
    if (stroke != "none") body_ += " stroke=\"" + stroke + "\"";
    body_ += "/>\n";
}

void SvgCanvas::rect_px(double px0, double py0, double w, double h,
                        const std::string& fill, const std::string& stroke) {
    body_ += "<rect x=\"" + svg_num(px0) + "\" y=\"" + svg_num(py0) + "\" width=\"" +
             svg_num(w) + "\" height=\"" + svg_num(h) + "\" fill=\"" + fill + "\"";
    if (stroke != "none") body_ += " stroke=\"" + stroke + "\"";
    body_ += "/>\n";
}

void SvgCanvas::text(double x, double y, const std::string& s, double size_px,
                     const std::string& fill, const std::string& anchor) {
    text_px(px(x), py(y), s, size_px, fill, anchor);
}

void SvgCanvas::text_px(double px0, double py0, const std::string& s, double size_px,
                        const std::string& fill, const std::string& anchor) {
    body_ += "<text x=\"" + svg_num(px0) + "\" y=\"" + svg_num(py0) +
             "\" font-family=\"sans-serif\" font-size=\"" + svg_num(size_px) +
             "\" fill=\"" + fill + "\" text-anchor=\"" + anchor + "\">" + escape(s) +
             "</text>\n";
}

void SvgCanvas::polyline(const std::string& world_points, const std::string& stroke,
                         double width) {
    body_ += "<polyline points=\"" + world_points + "\" fill=\"none\" stroke=\"" +
             stroke + "\" stroke-width=\"" + svg_num(width) + "\"/>\n";
}

void SvgCanvas::raw(const std::string& fragment) { body_ += fragment; }

void SvgCanvas::axes(const std::string& x_label, const std::string& y_label) {
    const double L = m_left_, R = kWidth - m_right_;
    const double T = m_top_, B = kHeight - m_bottom_;
    body_ += "<rect x=\"" + svg_num(L) + "\" y=\"" + svg_num(T) + "\" width=\"" +
             svg_num(R - L) + "\" height=\"" + svg_num(B - T) +
             "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    const int ticks = 8;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = x_lo_ + (x_hi_ - x_lo_) * i / ticks;
        const double fy = y_lo_ + (y_hi_ - y_lo_) * i / ticks;
        const double tx = px(fx), ty = py(fy);
        body_ += "<line x1=\"" + svg_num(tx) + "\" y1=\"" + svg_num(B) + "\" x2=\"" +
                 svg_num(tx) + "\" y2=\"" + svg_num(B + 5) +
                 "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        text_px(tx, B + 19, svg_num(fx), 11, "#333333", "middle");
        body_ += "<line x1=\"" + svg_num(L - 5) + "\" y1=\"" + svg_num(ty) +
                 "\" x2=\"" + svg_num(L) + "\" y2=\"" + svg_num(ty) +
                 "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        text_px(L - 9, ty + 4, svg_num(fy), 11, "#333333", "end");
    }
    text_px((L + R) / 2.0, kHeight - 14.0, x_label, 13, "#111111", "middle");
    body_ += "<text x=\"18\" y=\"" + svg_num((T + B) / 2.0) +
             "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#111111\" "
             "text-anchor=\"middle\" transform=\"rotate(-90 18 " +
             svg_num((T + B) / 2.0) + ")\">" + escape(y_label) + "</text>\n";
}

std::string SvgCanvas::str() const {
    std::string out =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"700\" "
        "viewBox=\"0 0 1000 700\">\n"
        "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"700\" fill=\"#ffffff\"/>\n";
    out += body_;
    out += "</svg>\n";
    return out;
}

}  // namespace gf
