#pragma once

#include <string>

namespace gf {

/// Minimal self-contained SVG builder used by the report writers. The
/// canvas is a fixed 1000 x 700 pixel viewport with a world-coordinate
/// plot area; all drawing primitives take world coordinates and are mapped
/// through the configured axes. The output embeds no external resources.
class SvgCanvas {
public:
    static constexpr double kWidth = 1000.0;
    static constexpr double kHeight = 700.0;

    /// World window (x right, y up) mapped onto the plot area.
    SvgCanvas(double x_lo, double x_hi, double y_lo, double y_hi,
              const std::string& title = "");

    double px(double x) const;  ///< world x -> pixel x
    double py(double y) const;  ///< world y -> pixel y (flipped)

    void line(double x1, double y1, double x2, double y2,
              const std::string& stroke, double width = 1.0,
              const std::string& dash = "");
    void circle(double x, double y, double radius_px, const std::string& fill,
                const std::string& stroke = "none");
    void rect_px(double px0, double py0, double w, double h,
                 const std::string& fill, const std::string& stroke = "none");
    void text(double x, double y, const std::string& s, double size_px = 12.0,
              const std::string& fill = "#222222", const std::string& anchor = "start");
    void text_px(double px0, double py0, const std::string& s, double size_px = 12.0,
                 const std::string& fill = "#222222", const std::string& anchor = "start");
    void polyline(const std::string& world_points, const std::string& stroke,
                  double width = 1.0);
    void raw(const std::string& fragment);  ///< append a raw SVG fragment

    /// Draws the plot frame and numeric axis tick labels.
    void axes(const std::string& x_label, const std::string& y_label);

    /// Completed document.
    std::string str() const;

    double x_lo() const { return x_lo_; }
    double x_hi() const { return x_hi_; }
    double y_lo() const { return y_lo_; }
    double y_hi() const { return y_hi_; }

private:
    double x_lo_, x_hi_, y_lo_, y_hi_;
    double m_left_ = 70.0, m_right_ = 30.0, m_top_ = 50.0, m_bottom_ = 55.0;
    std::string body_;
};

/// Formats a double compactly for SVG attributes (fixed notation, trimmed).
std::string svg_num(double v);

}  // namespace gf
