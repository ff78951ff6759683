#include "report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fbj::cli {

std::string format_number(double v) {
  if (!std::isfinite(v)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

std::string format_number(std::optional<double> v) {
  return v ? format_number(*v) : std::string{};
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::string out = kConvergeHeader;
  out += '\n';
  for (const auto& r : report.rows) {
    out += std::to_string(r.N);
    for (const auto& v : {r.linf_error, r.l2w_error, r.cond, r.assembly_ms, r.solve_ms}) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string convergence_svg(const ConvergenceReport& report) {
  constexpr double W = 720, H = 480;
  constexpr double left = 80, right = 30, top = 50, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;

  int n_lo = 0, n_hi = 1;
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  if (!report.rows.empty()) {
    n_lo = report.rows.front().N;
    n_hi = report.rows.back().N;
  }
  if (n_hi == n_lo) ++n_hi;
  for (const auto& r : report.rows) {
    for (const auto& v : {r.linf_error, r.l2w_error}) {
      if (v && *v > 0 && std::isfinite(*v)) {
        lo = std::min(lo, std::log10(*v));
        hi = std::max(hi, std::log10(*v));
      }
    }
  }
  if (!(lo <= hi)) lo = hi = 0;
  const int d_lo = static_cast<int>(std::floor(lo));
  int d_hi = static_cast<int>(std::ceil(hi));
  if (d_hi == d_lo) ++d_hi;

  auto px = [&](double N) { return left + pw * (N - n_lo) / (n_hi - n_lo); };
  auto py = [&](double e) { return top + ph * (d_hi - std::log10(e)) / (d_hi - d_lo); };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  char title[256];
  std::snprintf(title, sizeof title, "%s (theta=%g, rho=%g, mu=%g, upsilon=%g)",
                report.label.c_str(), report.theta, report.rho, report.mu, report.upsilon);
  s << "<text x=\"" << fixed(W / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"14\">"
    << xml_escape(title) << "</text>\n";

  // Decade grid and labels.
  for (int d = d_lo; d <= d_hi; ++d) {
    const double y = py(std::pow(10.0, d));
    s << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(y) << "\" x2=\"" << fixed(left + pw)
      << "\" y2=\"" << fixed(y) << "\" stroke=\"#dddddd\"/>\n"
      << "<text x=\"" << fixed(left - 8) << "\" y=\"" << fixed(y + 4)
      << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  const std::size_t stride = std::max<std::size_t>(1, report.rows.size() / 12);
  for (std::size_t i = 0; i < report.rows.size(); i += stride) {
    const double x = px(report.rows[i].N);
    s << "<line x1=\"" << fixed(x) << "\" y1=\"" << fixed(top + ph) << "\" x2=\"" << fixed(x)
      << "\" y2=\"" << fixed(top + ph + 5) << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(top + ph + 20)
      << "\" text-anchor=\"middle\">" << report.rows[i].N << "</text>\n";
  }
  s << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(pw)
    << "\" height=\"" << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n"
    << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(H - 15)
    << "\" text-anchor=\"middle\">N</text>\n"
    << "<text x=\"20\" y=\"" << fixed(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
    << fixed(top + ph / 2) << ")\">error</text>\n";

  struct Series {
    const char* name;
    const char* color;
    std::optional<double> ConvergenceRow::*field;
  };
  const Series series[] = {{"L-infinity", "#1f77b4", &ConvergenceRow::linf_error},
                           {"weighted L2", "#d62728", &ConvergenceRow::l2w_error}};
  for (std::size_t k = 0; k < 2; ++k) {
    const Series& ser = series[k];
    // Missing points break the polyline into separate runs.
    std::string run;
    auto flush = [&] {
      if (!run.empty()) {
        s << "<polyline fill=\"none\" stroke=\"" << ser.color << "\" stroke-width=\"1.5\" points=\""
          << run << "\"/>\n";
      }
      run.clear();
    };
    for (const auto& r : report.rows) {
      const auto& v = r.*(ser.field);
      if (!v || !(*v > 0) || !std::isfinite(*v)) {
        flush();
        continue;
      }
      const double x = px(r.N), y = py(*v);
      if (!run.empty()) run += ' ';
      run += fixed(x) + ',' + fixed(y);
      s << "<circle cx=\"" << fixed(x) << "\" cy=\"" << fixed(y) << "\" r=\"3\" fill=\""
        << ser.color << "\"/>\n";
    }
    flush();
    const double ly = top + 16 + 18 * k;
    s << "<line x1=\"" << fixed(left + pw - 130) << "\" y1=\"" << fixed(ly) << "\" x2=\""
      << fixed(left + pw - 105) << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << ser.color
      << "\" stroke-width=\"2\"/>\n"
      << "<text x=\"" << fixed(left + pw - 98) << "\" y=\"" << fixed(ly + 4) << "\">"
      << ser.name << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace fbj::cli
