#include "figure.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace axrel::cli {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// one clock face; the hand turns a quarter per time unit
void clock(std::ostringstream& os, double cx, double cy, double reading, const std::string& label) {
    const double r = 18;
    double a = reading * M_PI / 2;
    os << "  <circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r)
       << "\" fill=\"white\" stroke=\"black\"/>\n";
    os << "  <line x1=\"" << num(cx) << "\" y1=\"" << num(cy) << "\" x2=\"" << num(cx + 0.8 * r * std::sin(a))
       << "\" y2=\"" << num(cy - 0.8 * r * std::cos(a)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    os << "  <text x=\"" << num(cx) << "\" y=\"" << num(cy + r + 16) << "\" text-anchor=\"middle\">" << label << "</text>\n";
}

void ship(std::ostringstream& os, double x0, double len, double y, const std::string& caption) {
    os << "  <rect x=\"" << num(x0) << "\" y=\"" << num(y - 14) << "\" width=\"" << num(len)
       << "\" height=\"28\" fill=\"#dde6f0\" stroke=\"black\"/>\n";
    os << "  <polygon points=\"" << num(x0 + len) << "," << num(y - 14) << " " << num(x0 + len + 24) << "," << num(y) << " "
       << num(x0 + len) << "," << num(y + 14) << "\" fill=\"#dde6f0\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << num(x0) << "\" y=\"" << num(y - 26) << "\">" << caption << "</text>\n";
}

}  // namespace

std::string ship_figure(const EffectReport& r) {
    const double width = 640, margin = 60, full = 440;
    double len = r.ship_length.to_double();
    double scale = full / len;
    double contracted = r.length_contraction.to_double() * len * scale;
    double offset = r.clock_asynchrony.to_double();

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"330\" font-family=\"sans-serif\" font-size=\"13\">\n";
    os << "  <text x=\"" << num(margin) << "\" y=\"24\">ship of proper length " << r.ship_length.to_string() << " moving at v = "
       << r.v.to_string() << "</text>\n";

    ship(os, margin, full, 90, "in its own frame: clocks synchronized");
    clock(os, margin + 20, 90, 0, "rear 0");
    clock(os, margin + full - 20, 90, 0, "nose 0");

    double y = 230;
    ship(os, margin, contracted, y, "seen at one instant: length " + r.length_contraction.to_string() + " of proper");
    clock(os, margin + 20, y, offset, "rear +" + r.clock_asynchrony.to_string());
    clock(os, margin + contracted - 20, y, 0, "nose 0");
    os << "  <text x=\"" << num(margin) << "\" y=\"" << num(y + 70) << "\">moving clocks run at rate "
       << r.time_dilation.to_string() << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace axrel::cli
