#include "thinshell/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "thinshell/fit.hpp"

namespace thinshell {

namespace {

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

std::string num(double v) { return std::isfinite(v) ? fmt17(v) : "null"; }

std::string array(const std::vector<double>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + "]";
}

std::string csv_num(double v) { return std::isfinite(v) ? fmt17(v) : ""; }

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string results_json(const std::vector<CheckResult>& results) {
  std::ostringstream o;
  o << "[\n";
  for (size_t k = 0; k < results.size(); ++k) {
    const CheckResult& r = results[k];
    o << "  {\n";
    o << "    \"name\": " << quote(r.name) << ",\n";
    o << "    \"family\": " << quote(r.family) << ",\n";
    o << "    \"surface\": " << quote(r.surface) << ",\n";
    o << "    \"kind\": " << quote(r.kind) << ",\n";
    o << "    \"description\": " << quote(r.description) << ",\n";
    o << "    \"eps\": " << array(r.eps) << ",\n";
    o << "    \"lhs\": " << array(r.lhs) << ",\n";
    o << "    \"rhs\": " << array(r.rhs) << ",\n";
    o << "    \"members\": [";
    for (size_t i = 0; i < r.series.size(); ++i) {
      const MemberSeries& s = r.series[i];
      o << (i ? ",\n" : "\n") << "      {\"member\": " << s.member << ", \"lhs\": " << array(s.lhs)
        << ", \"rhs\": " << array(s.rhs) << ", \"ratio\": " << array(s.ratio) << ", \"slope\": " << num(s.slope)
        << ", \"residual\": " << num(s.residual) << "}";
    }
    o << (r.series.empty() ? "],\n" : "\n    ],\n");
    o << "    \"expected\": " << num(r.expected) << ",\n";
    o << "    \"slope\": " << num(r.slope) << ",\n";
    o << "    \"residual\": " << num(r.residual) << ",\n";
    o << "    \"constant\": " << num(r.constant) << ",\n";
    o << "    \"growth\": " << num(r.growth) << ",\n";
    o << "    \"threshold\": " << num(r.threshold) << ",\n";
    o << "    \"ceiling\": " << num(r.ceiling) << ",\n";
    o << "    \"probe_change\": " << num(r.probe_change) << ",\n";
    o << "    \"vacuous\": " << (r.vacuous ? "true" : "false") << ",\n";
    o << "    \"verdict\": " << quote(r.verdict) << ",\n";
    o << "    \"note\": " << quote(r.note) << "\n";
    o << "  }" << (k + 1 < results.size() ? "," : "") << "\n";
  }
  o << "]\n";
  return o.str();
}

std::string results_csv(const std::vector<CheckResult>& results) {
  std::ostringstream o;
  o << "name,family,eps_min,eps_max,slope,residual,constant,verdict\n";
  for (const auto& r : results) {
    double lo = NAN, hi = NAN;
    if (!r.eps.empty()) {
      lo = *std::min_element(r.eps.begin(), r.eps.end());
      hi = *std::max_element(r.eps.begin(), r.eps.end());
    }
    o << r.name << ',' << r.family << ',' << csv_num(lo) << ',' << csv_num(hi) << ',' << csv_num(r.slope) << ','
      << csv_num(r.residual) << ',' << csv_num(r.constant) << ',' << r.verdict << '\n';
  }
  return o.str();
}

std::string series_csv(const CheckResult& r) {
  std::ostringstream o;
  o << "member,eps,lhs,rhs,ratio\n";
  for (const auto& s : r.series)
    for (size_t i = 0; i < r.eps.size() && i < s.ratio.size(); ++i)
      o << s.member << ',' << csv_num(r.eps[i]) << ',' << csv_num(s.lhs[i]) << ',' << csv_num(s.rhs[i]) << ','
        << csv_num(s.ratio[i]) << '\n';
  return o.str();
}

std::string plot_svg(const CheckResult& r) {
  constexpr double W = 520, H = 380, L = 70, R = 20, T = 40, B = 50;
  struct Pt {
    double x, y;
  };
  std::vector<std::vector<Pt>> pts;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : r.series) {
    std::vector<Pt> p;
    for (size_t i = 0; i < r.eps.size() && i < s.ratio.size(); ++i) {
      if (!(r.eps[i] > 0.0) || !(s.ratio[i] > 0.0) || !std::isfinite(s.ratio[i])) continue;
      const Pt q{std::log10(r.eps[i]), std::log10(s.ratio[i])};
      x0 = std::min(x0, q.x);
      x1 = std::max(x1, q.x);
      y0 = std::min(y0, q.y);
      y1 = std::max(y1, q.y);
      p.push_back(q);
    }
    pts.push_back(std::move(p));
  }

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << r.name << " (" << r.surface
    << ", " << r.verdict << ")</text>\n";
  if (!std::isfinite(x0)) {
    o << "<text x=\"" << W / 2 << "\" y=\"" << H / 2 << "\" text-anchor=\"middle\">no positive samples</text>\n</svg>\n";
    return o.str();
  }
  if (x1 - x0 < 1e-12) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 - y0 < 1e-12) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double px = (x1 - x0) * 0.05, py = (y1 - y0) * 0.08;
  x0 -= px;
  x1 += px;
  y0 -= py;
  y1 += py;
  auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  char buf[64];
  for (int k = 0; k <= 4; ++k) {
    const double x = x0 + (x1 - x0) * k / 4, y = y0 + (y1 - y0) * k / 4;
    std::snprintf(buf, sizeof buf, "%.2f", x);
    o << "<text x=\"" << sx(x) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.2f", y);
    o << "<text x=\"" << L - 6 << "\" y=\"" << sy(y) + 4 << "\" text-anchor=\"end\">" << buf << "</text>\n";
  }
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">log10 eps</text>\n";
  o << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << (T + H - B) / 2 << ")\">log10 lhs/rhs</text>\n";

  for (size_t m = 0; m < pts.size(); ++m) {
    const char* col = kPalette[m % 6];
    if (pts[m].size() > 1) {
      o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-opacity=\"0.5\" points=\"";
      for (const auto& q : pts[m]) o << sx(q.x) << ',' << sy(q.y) << ' ';
      o << "\"/>\n";
    }
    for (const auto& q : pts[m])
      o << "<circle cx=\"" << sx(q.x) << "\" cy=\"" << sy(q.y) << "\" r=\"3.5\" fill=\"" << col << "\"/>\n";
  }

  // Fitted line through the reported (worst) member.
  std::vector<double> e, v;
  for (size_t i = 0; i < r.eps.size() && i < r.lhs.size(); ++i)
    if (r.rhs[i] != 0.0 && r.lhs[i] / r.rhs[i] > 0.0) {
      e.push_back(r.eps[i]);
      v.push_back(r.lhs[i] / r.rhs[i]);
    }
  if (e.size() >= 2) {
    const Fit f = fit_exponent(e, v);
    const double xa = std::log10(*std::min_element(e.begin(), e.end()));
    const double xb = std::log10(*std::max_element(e.begin(), e.end()));
    const double ln10 = std::log(10.0);
    auto fy = [&](double x) { return (f.intercept + f.slope * x * ln10) / ln10; };
    o << "<line x1=\"" << sx(xa) << "\" y1=\"" << sy(fy(xa)) << "\" x2=\"" << sx(xb) << "\" y2=\"" << sy(fy(xb))
      << "\" stroke=\"black\" stroke-dasharray=\"5,3\"/>\n";
    std::snprintf(buf, sizeof buf, "slope %.4f", f.slope);
    o << "<text x=\"" << L + 8 << "\" y=\"" << T + 16 << "\">" << buf << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

int exit_code(const std::vector<CheckResult>& results) {
  bool fail = false, inconclusive = false;
  for (const auto& r : results) {
    if (r.verdict == "fail") fail = true;
    if (r.verdict == "inconclusive") inconclusive = true;
  }
  return fail ? 1 : inconclusive ? 3 : 0;
}

}  // namespace thinshell
