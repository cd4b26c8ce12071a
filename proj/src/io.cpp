#include "qgp/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qgp::io {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fnv1a_hex(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string provenance_text(const Provenance& p) {
    std::string s = "qgpdark ";
    s += kVersion;
    s += " config=" + p.config_hash + " normalization=" + p.normalization;
    return s;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
        os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!os) throw std::runtime_error(path.string() + ": " + std::strerror(errno));
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error(path.string() + ": " + ec.message());
    }
}

namespace {

std::string escape(std::string_view s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

std::string render_svg(const Plot& plot, const Provenance& provenance) {
    constexpr double width = 640.0;
    constexpr double height = 480.0;
    constexpr double left = 70.0;
    constexpr double right = 20.0;
    constexpr double top = 40.0;
    constexpr double bottom = 50.0;

    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin;
    double ymin = xmin;
    double ymax = -xmin;
    auto extend = [&](double x, double y) {
        if (!std::isfinite(x) || !std::isfinite(y)) return;
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    };
    for (const auto& s : plot.series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) extend(s.x[i], s.y[i]);
    }
    for (const auto& m : plot.markers) extend(m.x, m.y);
    for (const auto& l : plot.levels) extend(std::isfinite(xmin) ? xmin : 0.0, l.y);
    if (!std::isfinite(xmin)) {
        xmin = ymin = 0.0;
        xmax = ymax = 1.0;
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (width - left - right); };
    auto py = [&](double y) { return height - bottom - (y - ymin) / (ymax - ymin) * (height - top - bottom); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<!-- " << escape(provenance_text(provenance)) << " -->\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"15\">"
       << escape(plot.title) << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right
       << "\" height=\"" << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        os << "<text x=\"" << fixed(px(xv)) << "\" y=\"" << height - bottom + 16
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << tick(xv)
           << "</text>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << fixed(py(yv) + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick(yv)
           << "</text>\n";
    }
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(plot.x_label)
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << height / 2 << "\" transform=\"rotate(-90 16 " << height / 2
       << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << escape(plot.y_label)
       << "</text>\n";
    for (const auto& l : plot.levels) {
        os << "<line x1=\"" << left << "\" y1=\"" << fixed(py(l.y)) << "\" x2=\"" << width - right
           << "\" y2=\"" << fixed(py(l.y)) << "\" stroke=\"black\" stroke-dasharray=\"3,3\"/>\n";
        os << "<text x=\"" << left + 4 << "\" y=\"" << fixed(py(l.y) - 4)
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(l.label) << "</text>\n";
    }
    for (const auto& s : plot.series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            os << fixed(px(s.x[i])) << ',' << fixed(py(s.y[i])) << ' ';
        }
        os << "\"/>\n";
    }
    for (const auto& m : plot.markers) {
        os << "<circle cx=\"" << fixed(px(m.x)) << "\" cy=\"" << fixed(py(m.y))
           << "\" r=\"4\" fill=\"none\" stroke=\"red\"/>\n";
        os << "<text x=\"" << fixed(px(m.x) - 6) << "\" y=\"" << fixed(py(m.y) - 8)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"red\">"
           << escape(m.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace qgp::io
