#include "synsal/report.hpp"

#include <cstdio>
#include <sstream>

namespace synsal {

namespace {

std::string g10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string eval_summary_csv(const EvalResult& result) {
  std::ostringstream out;
  out << "mae,f_beta,n_images\n";
  out << g10(result.mae) << "," << g10(result.f_beta) << "," << result.n_images << "\n";
  return out.str();
}

std::string pr_curve_csv(const std::vector<PrPoint>& curve) {
  std::ostringstream out;
  out << "threshold,precision,recall\n";
  for (const PrPoint& pt : curve) {
    out << g10(pt.threshold) << "," << g10(pt.precision) << "," << g10(pt.recall) << "\n";
  }
  return out.str();
}

std::string histogram_csv(const std::vector<HistogramBin>& bins) {
  std::ostringstream out;
  out << "ratio_lo,ratio_hi,count\n";
  for (const HistogramBin& bin : bins) {
    out << g10(bin.lo) << "," << g10(bin.hi) << "," << bin.count << "\n";
  }
  return out.str();
}

std::string pr_curve_svg(const std::vector<PrPoint>& curve) {
  const int size = 480, margin = 50;
  const int plot = size - 2 * margin;
  auto sx = [&](double recall) { return margin + recall * plot; };
  auto sy = [&](double precision) { return size - margin - precision * plot; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes + grid
  for (int i = 0; i <= 5; ++i) {
    const double t = i / 5.0;
    out << "  <line x1=\"" << g10(sx(t)) << "\" y1=\"" << margin << "\" x2=\"" << g10(sx(t))
        << "\" y2=\"" << size - margin << "\" stroke=\"#dddddd\"/>\n";
    out << "  <line x1=\"" << margin << "\" y1=\"" << g10(sy(t)) << "\" x2=\"" << size - margin
        << "\" y2=\"" << g10(sy(t)) << "\" stroke=\"#dddddd\"/>\n";
    out << "  <text x=\"" << g10(sx(t) - 8) << "\" y=\"" << size - margin + 18
        << "\" font-size=\"11\">" << g10(t) << "</text>\n";
    out << "  <text x=\"" << margin - 30 << "\" y=\"" << g10(sy(t) + 4)
        << "\" font-size=\"11\">" << g10(t) << "</text>\n";
  }
  out << "  <text x=\"" << size / 2 - 18 << "\" y=\"" << size - 12
      << "\" font-size=\"12\">recall</text>\n";
  out << "  <text x=\"12\" y=\"" << size / 2
      << "\" font-size=\"12\" transform=\"rotate(-90 16 " << size / 2
      << ")\">precision</text>\n";

  out << "  <polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
  for (const PrPoint& pt : curve) {
    out << g10(sx(pt.recall)) << "," << g10(sy(pt.precision)) << " ";
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

}  // namespace synsal
