#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace sotm::svg {

inline std::string escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

inline std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Minimal deterministic SVG document builder; every emitter writes fixed
// two-decimal coordinates so identical input yields identical bytes.
class Document {
public:
    Document(double width, double height) : width_(width), height_(height) {}

    void rect(double x, double y, double w, double h, const std::string& fill,
              const std::string& title = "") {
        body_ << "  <rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
              << "\" height=\"" << num(h) << "\" fill=\"" << fill << "\"";
        if (title.empty()) {
            body_ << "/>\n";
        } else {
            body_ << "><title>" << escape(title) << "</title></rect>\n";
        }
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width,
              bool dashed = false) {
        body_ << "  <line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
              << "\" y2=\"" << num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
              << num(width) << "\"";
        if (dashed) body_ << " stroke-dasharray=\"4 3\"";
        body_ << "/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                  double width, double opacity = 1.0) {
        body_ << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
              << num(width) << "\"";
        if (opacity < 1.0) body_ << " stroke-opacity=\"" << num(opacity) << "\"";
        body_ << " points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ << ' ';
            body_ << num(pts[i].first) << ',' << num(pts[i].second);
        }
        body_ << "\"/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& fill,
                const std::string& stroke = "", double stroke_width = 0.0) {
        body_ << "  <circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r)
              << "\" fill=\"" << fill << "\"";
        if (!stroke.empty()) {
            body_ << " stroke=\"" << stroke << "\" stroke-width=\"" << num(stroke_width) << "\"";
        }
        body_ << "/>\n";
    }

    void text(double x, double y, const std::string& s, double size,
              const std::string& anchor = "start", const std::string& fill = "#333333") {
        body_ << "  <text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << num(size)
              << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\" fill=\"" << fill
              << "\">" << escape(s) << "</text>\n";
    }

    std::string str() const {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_)
            << "\" height=\"" << num(height_) << "\" viewBox=\"0 0 " << num(width_) << ' '
            << num(height_) << "\">\n"
            << "  <rect x=\"0\" y=\"0\" width=\"" << num(width_) << "\" height=\"" << num(height_)
            << "\" fill=\"#ffffff\"/>\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    double width_;
    double height_;
    std::ostringstream body_;
};

} // namespace sotm::svg
