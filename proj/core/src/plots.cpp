#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "pneuarm/io.hpp"
#include "pneuarm/sim.hpp"

namespace pneuarm {
namespace {

constexpr double kWidth = 840.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;

struct Series {
  std::string name;
  std::string color;
  const std::vector<double>* xs;
  const std::vector<double>* ys;
};

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void span(const std::vector<Series>& series, bool horizontal, double& lo,
          double& hi) {
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (const Series& s : series) {
    for (double v : horizontal ? *s.xs : *s.ys) {
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo < hi)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
}

void write_panel(const std::string& path, const std::string& title,
                 const std::string& x_label, const std::string& y_label,
                 const std::vector<Series>& series) {
  double x0, x1, y0, y1;
  span(series, true, x0, x1);
  span(series, false, y0, y1);
  const auto sx = [&](double v) {
    return kMargin + (v - x0) / (x1 - x0) * (kWidth - 2 * kMargin);
  };
  const auto sy = [&](double v) {
    return kHeight - kMargin - (v - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
  };

  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << px(kWidth / 2)
      << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
      << "</text>\n";
  out << "<line x1=\"" << px(kMargin) << "\" y1=\"" << px(kHeight - kMargin)
      << "\" x2=\"" << px(kWidth - kMargin) << "\" y2=\""
      << px(kHeight - kMargin) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << px(kMargin) << "\" y1=\"" << px(kMargin)
      << "\" x2=\"" << px(kMargin) << "\" y2=\"" << px(kHeight - kMargin)
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << px(kMargin) << "\" y=\"" << px(kHeight - kMargin + 20)
      << "\" font-size=\"11\">" << format_number(x0) << "</text>\n"
      << "<text x=\"" << px(kWidth - kMargin) << "\" y=\""
      << px(kHeight - kMargin + 20)
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(x1)
      << "</text>\n"
      << "<text x=\"" << px(kMargin - 6) << "\" y=\""
      << px(kHeight - kMargin) << "\" text-anchor=\"end\" font-size=\"11\">"
      << format_number(y0) << "</text>\n"
      << "<text x=\"" << px(kMargin - 6) << "\" y=\"" << px(kMargin + 4)
      << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(y1)
      << "</text>\n"
      << "<text x=\"" << px(kWidth / 2) << "\" y=\"" << px(kHeight - 16)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label
      << "</text>\n"
      << "<text x=\"16\" y=\"" << px(kHeight / 2)
      << "\" font-size=\"12\" transform=\"rotate(-90 16 " << px(kHeight / 2)
      << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";

  double legend_y = kMargin + 10;
  for (const Series& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.2\" points=\"";
    bool first = true;
    for (size_t i = 0; i < s.xs->size(); ++i) {
      if (!std::isfinite((*s.xs)[i]) || !std::isfinite((*s.ys)[i])) continue;
      if (!first) out << ' ';
      out << px(sx((*s.xs)[i])) << ',' << px(sy((*s.ys)[i]));
      first = false;
    }
    out << "\"/>\n";
    out << "<rect x=\"" << px(kWidth - kMargin - 150) << "\" y=\""
        << px(legend_y - 9) << "\" width=\"18\" height=\"4\" fill=\""
        << s.color << "\"/>\n"
        << "<text x=\"" << px(kWidth - kMargin - 126) << "\" y=\""
        << px(legend_y - 4) << "\" font-size=\"11\">" << s.name
        << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

std::vector<std::string> emit_plots(const SimLog& log,
                                    const std::string& directory) {
  const size_t n = log.rows.size();
  std::vector<double> t(n), sd(n), ed(n), st(n), et(n), ps(n), pe(n),
      es(n), ee(n), x(n), y(n), z(n), xd(n), yd(n), zd(n);
  constexpr double kDeg = 180.0 / std::numbers::pi;
  for (size_t i = 0; i < n; ++i) {
    const SimRow& r = log.rows[i];
    t[i] = r.t;
    sd[i] = r.theta_s_des * kDeg;
    ed[i] = r.theta_e_des * kDeg;
    st[i] = r.theta_s_true * kDeg;
    et[i] = r.theta_e_true * kDeg;
    ps[i] = r.pwm_s;
    pe[i] = r.pwm_e;
    es[i] = std::abs(r.theta_s_true - r.theta_s_des) * kDeg;
    ee[i] = std::abs(r.theta_e_true - r.theta_e_des) * kDeg;
    x[i] = r.x;
    y[i] = r.y;
    z[i] = r.z;
    xd[i] = r.x_des;
    yd[i] = r.y_des;
    zd[i] = r.z_des;
  }

  const std::string sep = directory.empty() ? "" : "/";
  std::vector<std::string> paths = {
      directory + sep + "angles.svg", directory + sep + "pwm.svg",
      directory + sep + "error.svg", directory + sep + "wrist_xy.svg",
      directory + sep + "wrist_xz.svg", directory + sep + "wrist_yz.svg"};

  write_panel(paths[0], "Joint angles", "time [s]", "angle [deg]",
              {{"shoulder desired", "#9ecae1", &t, &sd},
               {"shoulder actual", "#1f77b4", &t, &st},
               {"elbow desired", "#fdae6b", &t, &ed},
               {"elbow actual", "#d62728", &t, &et}});
  write_panel(paths[1], "Commanded duty cycle", "time [s]", "PWM [%]",
              {{"shoulder", "#1f77b4", &t, &ps},
               {"elbow", "#d62728", &t, &pe}});
  write_panel(paths[2], "Tracking error", "time [s]", "|error| [deg]",
              {{"shoulder", "#1f77b4", &t, &es},
               {"elbow", "#d62728", &t, &ee}});
  write_panel(paths[3], "Wrist path, XY plane", "x [m]", "y [m]",
              {{"desired", "#9ecae1", &xd, &yd},
               {"actual", "#1f77b4", &x, &y}});
  write_panel(paths[4], "Wrist path, XZ plane", "x [m]", "z [m]",
              {{"desired", "#9ecae1", &xd, &zd},
               {"actual", "#1f77b4", &x, &z}});
  write_panel(paths[5], "Wrist path, YZ plane", "y [m]", "z [m]",
              {{"desired", "#9ecae1", &yd, &zd},
               {"actual", "#1f77b4", &y, &z}});
  return paths;
}

}  // namespace pneuarm
