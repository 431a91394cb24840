#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "oslr/experiment.hpp"

namespace oslr {

namespace {

struct Series {
  std::vector<double> index, med, q25, q75;
};

double percentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  if (v.empty()) return 0.0;
  const double pos = p * double(v.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - double(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

// trial -> (index -> value), collapsed to median/quartiles per index.
Series collapse(const std::map<int, std::map<long, double>>& trials) {
  std::map<long, std::vector<double>> at;
  for (const auto& [trial, series] : trials)
    for (const auto& [idx, val] : series) at[idx].push_back(val);
  Series out;
  for (const auto& [idx, vals] : at) {
    out.index.push_back(double(idx));
    out.med.push_back(percentile(vals, 0.5));
    out.q25.push_back(percentile(vals, 0.25));
    out.q75.push_back(percentile(vals, 0.75));
  }
  return out;
}

struct AxisMap {
  double lo, hi;  // data range (already log10-transformed when log axis)
  double px0, px1;

  double operator()(double v) const {
    if (hi == lo) return (px0 + px1) / 2;
    return px0 + (v - lo) / (hi - lo) * (px1 - px0);
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

void write_plot(const std::string& path, const std::string& title, const Series& s, bool logx,
                bool logy, const std::string& annotation) {
  const double W = 640, H = 440;
  const double ml = 70, mr = 20, mt = 40, mb = 50;

  std::vector<double> xs, med, lo_band, hi_band;
  for (size_t i = 0; i < s.index.size(); ++i) {
    double x = s.index[i], m = s.med[i], a = s.q25[i], b = s.q75[i];
    if (logx && x <= 0) continue;
    if (logy && m <= 0) continue;
    xs.push_back(logx ? std::log10(x) : x);
    med.push_back(logy ? std::log10(m) : m);
    lo_band.push_back(logy ? std::log10(std::max(a, 1e-300)) : a);
    hi_band.push_back(logy ? std::log10(std::max(b, 1e-300)) : b);
  }
  if (xs.empty()) {
    std::cerr << "emit_plots: no plottable points for " << path << ", skipping\n";
    return;
  }

  double xmin = xs[0], xmax = xs[0], ymin = med[0], ymax = med[0];
  for (size_t i = 0; i < xs.size(); ++i) {
    xmin = std::min(xmin, xs[i]);
    xmax = std::max(xmax, xs[i]);
    ymin = std::min({ymin, med[i], lo_band[i]});
    ymax = std::max({ymax, med[i], hi_band[i]});
  }
  if (ymax == ymin) ymax = ymin + 1.0;
  const AxisMap X{xmin, xmax, ml, W - mr};
  const AxisMap Y{ymin, ymax, H - mb, mt};  // flipped

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">" << title << "</text>\n";

  // Interquartile band.
  if (xs.size() > 1) {
    svg << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.45\" stroke=\"none\" points=\"";
    for (size_t i = 0; i < xs.size(); ++i) svg << X(xs[i]) << "," << Y(lo_band[i]) << " ";
    for (size_t i = xs.size(); i-- > 0;) svg << X(xs[i]) << "," << Y(hi_band[i]) << " ";
    svg << "\"/>\n";
  }

  // Median line.
  svg << "<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"1.6\" points=\"";
  for (size_t i = 0; i < xs.size(); ++i) svg << X(xs[i]) << "," << Y(med[i]) << " ";
  svg << "\"/>\n";

  // Axes and ticks.
  svg << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  for (int tck = 0; tck <= 4; ++tck) {
    const double fx = xmin + (xmax - xmin) * tck / 4.0;
    const double fy = ymin + (ymax - ymin) * tck / 4.0;
    const double vx = logx ? std::pow(10.0, fx) : fx;
    const double vy = logy ? std::pow(10.0, fy) : fy;
    svg << "<line x1=\"" << X(fx) << "\" y1=\"" << H - mb << "\" x2=\"" << X(fx) << "\" y2=\""
        << H - mb + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << X(fx) << "\" y=\"" << H - mb + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(vx)
        << "</text>\n";
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y(fy) << "\" x2=\"" << ml << "\" y2=\""
        << Y(fy) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << Y(fy) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(vy)
        << "</text>\n";
  }
  if (!annotation.empty()) {
    svg << "<text x=\"" << W - mr - 6 << "\" y=\"" << mt + 16
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << annotation
        << "</text>\n";
  }
  svg << "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  out << svg.str();
}

}  // namespace

void emit_plots(const ResultTable& table, const std::string& out_dir, double slope_lo,
                double slope_hi) {
  std::filesystem::create_directories(out_dir);

  // algorithm -> metric -> trial -> (index -> value)
  std::map<std::string, std::map<std::string, std::map<int, std::map<long, double>>>> grouped;
  for (const ResultRow& r : table.rows) grouped[r.algorithm][r.metric][r.trial][r.index] = r.value;

  for (const auto& [algo, metrics] : grouped) {
    if (const auto it = metrics.find("l1_error_S"); it != metrics.end() && !it->second.empty()) {
      const Series s = collapse(it->second);
      double lo = slope_lo, hi = slope_hi;
      if (lo <= 0 || hi <= 0) {
        const double smax = s.index.empty() ? 0.0 : s.index.back();
        lo = std::max(10.0, smax / 10.0);
        hi = smax;
      }
      const double slope = loglog_slope(s.index, s.med, lo, hi);
      std::ostringstream ann;
      if (std::isfinite(slope))
        ann << "fit slope " << fmt(slope) << " on [" << fmt(lo) << ", " << fmt(hi) << "]";
      write_plot(out_dir + "/" + algo + "__l1_error_S.svg", algo + ": ||w_hat - w*||_1 on S vs s",
                 s, /*logx=*/true, /*logy=*/true, ann.str());
    } else {
      std::cerr << "emit_plots: metric l1_error_S missing for " << algo << ", skipping\n";
    }

    if (const auto it = metrics.find("regret"); it != metrics.end() && !it->second.empty()) {
      const Series s = collapse(it->second);
      write_plot(out_dir + "/" + algo + "__regret.svg", algo + ": cumulative regret vs t", s,
                 /*logx=*/false, /*logy=*/false, "");
    } else {
      std::cerr << "emit_plots: metric regret missing for " << algo << ", skipping\n";
    }
  }
}

}  // namespace oslr
