#include "minnorm/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace minnorm {

namespace {

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int col(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return int(i);
        throw std::invalid_argument("plot: column not found: " + name);
    }
};

Csv read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("plot: cannot open " + path);
    Csv c;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (first) {
            c.header = cells;
            first = false;
        } else if (!cells.empty()) {
            cells.resize(c.header.size());
            c.rows.push_back(cells);
        }
    }
    return c;
}

double num(const std::string& s) {
    if (s.empty()) return std::nan("");
    return std::stod(s);
}

// Minimal SVG line chart with optional log axes.
class Chart {
  public:
    Chart(double w, double h, bool logx, bool logy) : w_(w), h_(h), logx_(logx), logy_(logy) {}

    void add_series(std::string name, std::string color, std::vector<double> xs,
                    std::vector<double> ys, bool points_only = false) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double x = xs[i], y = ys[i];
            if (std::isnan(x) || std::isnan(y)) continue;
            if (logx_ && x <= 0) continue;
            if (logy_ && y <= 0) continue;
            xmin_ = std::min(xmin_, tx(x));
            xmax_ = std::max(xmax_, tx(x));
            ymin_ = std::min(ymin_, ty(y));
            ymax_ = std::max(ymax_, ty(y));
        }
        series_.push_back({std::move(name), std::move(color), std::move(xs), std::move(ys),
                           points_only});
    }

    void write(const std::string& path, const std::string& title, const std::string& xlabel,
               const std::string& ylabel) {
        if (xmin_ > xmax_) { // no finite data
            xmin_ = 0;
            xmax_ = 1;
            ymin_ = 0;
            ymax_ = 1;
        }
        if (xmax_ - xmin_ < 1e-12) xmax_ = xmin_ + 1;
        if (ymax_ - ymin_ < 1e-12) ymax_ = ymin_ + 1;
        std::ostringstream o;
        o << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w_ << "' height='" << h_
          << "' viewBox='0 0 " << w_ << ' ' << h_ << "'>\n";
        o << "<rect width='100%' height='100%' fill='white'/>\n";
        o << "<text x='" << w_ / 2 << "' y='18' text-anchor='middle' font-size='13'>" << title
          << "</text>\n";
        // axes
        o << "<line x1='" << L_ << "' y1='" << h_ - B_ << "' x2='" << w_ - R_ << "' y2='"
          << h_ - B_ << "' stroke='black'/>\n";
        o << "<line x1='" << L_ << "' y1='" << T_ << "' x2='" << L_ << "' y2='" << h_ - B_
          << "' stroke='black'/>\n";
        o << "<text x='" << w_ / 2 << "' y='" << h_ - 6 << "' text-anchor='middle' font-size='11'>"
          << xlabel << "</text>\n";
        o << "<text x='12' y='" << h_ / 2
          << "' text-anchor='middle' font-size='11' transform='rotate(-90 12 " << h_ / 2 << ")'>"
          << ylabel << "</text>\n";
        ticks(o);
        double ly = T_ + 12;
        for (const auto& s : series_) {
            std::ostringstream pl;
            bool pen_up = true;
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                double x = s.xs[i], y = s.ys[i];
                if (std::isnan(x) || std::isnan(y) || (logx_ && x <= 0) || (logy_ && y <= 0)) {
                    pen_up = true;
                    continue;
                }
                pl << (pen_up ? 'M' : 'L') << px(tx(x)) << ' ' << py(ty(y)) << ' ';
                pen_up = s.points_only;
                if (s.points_only)
                    o << "<circle cx='" << px(tx(x)) << "' cy='" << py(ty(y))
                      << "' r='3' fill='" << s.color << "'/>\n";
            }
            if (!s.points_only)
                o << "<path d='" << pl.str() << "' fill='none' stroke='" << s.color
                  << "' stroke-width='1.4'/>\n";
            o << "<text x='" << w_ - R_ - 150 << "' y='" << ly << "' font-size='11' fill='"
              << s.color << "'>" << s.name << "</text>\n";
            ly += 14;
        }
        o << "</svg>\n";
        std::ofstream out(path, std::ios::binary);
        out << o.str();
    }

  private:
    struct Series {
        std::string name, color;
        std::vector<double> xs, ys;
        bool points_only;
    };
    double w_, h_;
    bool logx_, logy_;
    double L_ = 56, R_ = 16, T_ = 28, B_ = 40;
    double xmin_ = 1e300, xmax_ = -1e300, ymin_ = 1e300, ymax_ = -1e300;
    std::vector<Series> series_;

    double tx(double x) const { return logx_ ? std::log10(x) : x; }
    double ty(double y) const { return logy_ ? std::log10(y) : y; }
    double px(double t) const { return L_ + (t - xmin_) / (xmax_ - xmin_) * (w_ - L_ - R_); }
    double py(double t) const {
        return h_ - B_ - (t - ymin_) / (ymax_ - ymin_) * (h_ - T_ - B_);
    }

    void ticks(std::ostringstream& o) {
        for (int i = 0; i <= 4; ++i) {
            double t = xmin_ + (xmax_ - xmin_) * i / 4.0;
            double v = logx_ ? std::pow(10.0, t) : t;
            char buf[32];
            std::snprintf(buf, sizeof buf, logx_ ? "%.2g" : "%.3g", v);
            o << "<text x='" << px(t) << "' y='" << h_ - B_ + 14
              << "' text-anchor='middle' font-size='9'>" << buf << "</text>\n";
        }
        for (int i = 0; i <= 4; ++i) {
            double t = ymin_ + (ymax_ - ymin_) * i / 4.0;
            double v = logy_ ? std::pow(10.0, t) : t;
            char buf[32];
            std::snprintf(buf, sizeof buf, logy_ ? "%.2g" : "%.3g", v);
            o << "<text x='" << L_ - 4 << "' y='" << py(t) + 3
              << "' text-anchor='end' font-size='9'>" << buf << "</text>\n";
        }
    }
};

// Fixed series color mapping documented in the README: least squares is
// black; minimum-norm branches follow the s value.
std::string color_for_s(double s) {
    if (s == 0) return "#1f4ecc";  // blue
    if (s == 1) return "#d62728";  // red
    if (s == 2) return "#e6c700";  // yellow
    if (s == 3) return "#7e2f8e";  // purple
    if (s == 4) return "#2ca02c";  // green
    return "#777777";
}

void plot_runge(const Csv& c, const std::string& svg) {
    Chart ch(760, 480, true, true);
    int cs = c.col("s"), cp = c.col("p"), ce = c.col("Einf"), cr = c.col("regime");
    std::map<double, std::pair<std::vector<double>, std::vector<double>>> mn;
    std::vector<double> lsx, lsy;
    double first_s = std::nan("");
    for (const auto& r : c.rows) {
        double s = num(r[std::size_t(cs)]);
        if (std::isnan(first_s)) first_s = s;
        double p = num(r[std::size_t(cp)]), e = num(r[std::size_t(ce)]);
        if (r[std::size_t(cr)] == "LS") {
            if (s == first_s) {
                lsx.push_back(p);
                lsy.push_back(e);
            }
        } else {
            mn[s].first.push_back(p);
            mn[s].second.push_back(e);
        }
    }
    ch.add_series("least squares (p <= n)", "black", lsx, lsy);
    for (auto& [s, xy] : mn) {
        char nm[48];
        std::snprintf(nm, sizeof nm, "min norm s=%g", s);
        ch.add_series(nm, color_for_s(s), xy.first, xy.second);
    }
    ch.write(svg, "generalization error vs parameters", "p", "E_inf");
}

void plot_rate(const Csv& c, const std::string& svg) {
    Chart ch(640, 480, true, true);
    int chx = c.col("hX"), ce = c.col("Einf");
    std::vector<double> xs, ys;
    for (const auto& r : c.rows) {
        xs.push_back(num(r[std::size_t(chx)]));
        ys.push_back(num(r[std::size_t(ce)]));
    }
    ch.add_series("E_inf(f, f_ref)", "#d62728", xs, ys, true);
    ch.write(svg, "convergence rate", "h_X", "E_inf");
}

void plot_kernel(const Csv& c, const std::string& svg) {
    Chart ch(640, 480, false, false);
    int cp = c.col("p"), ct = c.col("t"), ck = c.col("K_p"), cg = c.col("green");
    std::map<double, std::pair<std::vector<double>, std::vector<double>>> series;
    std::vector<double> gx, gy;
    for (const auto& r : c.rows) {
        series[num(r[std::size_t(cp)])].first.push_back(num(r[std::size_t(ct)]));
        series[num(r[std::size_t(cp)])].second.push_back(num(r[std::size_t(ck)]));
        if (!r[std::size_t(cg)].empty()) {
            gx.push_back(num(r[std::size_t(ct)]));
            gy.push_back(num(r[std::size_t(cg)]));
        }
    }
    int i = 0;
    const char* colors[] = {"#1f4ecc", "#d62728", "#e6c700", "#7e2f8e", "#2ca02c", "#777777"};
    for (auto& [p, xy] : series) {
        char nm[32];
        std::snprintf(nm, sizeof nm, "K_p, p=%g", p);
        ch.add_series(nm, colors[i++ % 6], xy.first, xy.second);
    }
    if (!gx.empty()) ch.add_series("closed form", "black", gx, gy);
    ch.write(svg, "truncated kernel sections", "t", "K(t)");
}

void plot_ntk(const Csv& c, const std::string& svg) {
    Chart ch(480, 360, false, true);
    int cc = c.col("case"), cr = c.col("ratio");
    std::vector<double> xs, ys;
    double x = 1;
    std::string names;
    for (const auto& r : c.rows) {
        xs.push_back(x);
        ys.push_back(std::max(num(r[std::size_t(cr)]), 1e-20));
        names += r[std::size_t(cc)] + " ";
        x += 1;
    }
    ch.add_series("lambda_min / trace (" + names + ")", "#7e2f8e", xs, ys, true);
    ch.write(svg, "NTK Gram spectrum checks", "case", "lambda_min/trace");
}

void plot_near_optimal(const Csv& c, const std::string& svg) {
    Chart ch(560, 420, true, true);
    int cp = c.col("p"), cg = c.col("gap"), cpr = c.col("proj_residual");
    std::vector<double> xs, gap, pr;
    for (const auto& r : c.rows) {
        xs.push_back(num(r[std::size_t(cp)]));
        gap.push_back(num(r[std::size_t(cg)]));
        pr.push_back(num(r[std::size_t(cpr)]));
    }
    ch.add_series("optimality gap", "#d62728", xs, gap);
    ch.add_series("projection residual", "#1f4ecc", xs, pr);
    ch.write(svg, "interpolation vs best approximation", "p", "L2 quantity");
}

} // namespace

void plot_csv(const std::string& kind, const std::string& csv_path,
              const std::string& svg_path) {
    Csv c = read_csv(csv_path);
    if (kind == "runge-sweep") return plot_runge(c, svg_path);
    if (kind == "rate-study") return plot_rate(c, svg_path);
    if (kind == "kernel-eval") return plot_kernel(c, svg_path);
    if (kind == "ntk-check") return plot_ntk(c, svg_path);
    if (kind == "near-optimal") return plot_near_optimal(c, svg_path);
    throw std::invalid_argument("plot: unknown experiment kind " + kind);
}

} // namespace minnorm
