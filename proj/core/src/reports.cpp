// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#include "acoustodg/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace adg {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

std::string to_json(const SpuriousReport& r) {
  ordered_json j;
  j["type"] = "spurious";
  j["formulation"] = r.formulation;
  j["eps"] = r.eps;
  j["density"] = r.density;
  j["match_tol"] = r.match_tol;
  j["reference"] = r.reference;
  j["cells"] = ordered_json::array();
  for (const auto& cell : r.cells) {
    ordered_json jc;
    jc["preset"] = cell.preset;
    jc["a_s"] = cell.a_s;
    jc["k"] = cell.k;
    jc["flag_count"] = cell.flag_count;
    jc["entries"] = ordered_json::array();
    for (const auto& e : cell.entries) {
      ordered_json je;
      je["lambda"] = e.lambda;
      je["omega2"] = e.lambda - 1.0;
      je["flagged"] = e.flagged;
      je["nearest_ref"] = e.nearest_ref;
      je["rel_mismatch"] = e.rel_mismatch;
      if (e.vector_correlation >= 0.0) je["vector_correlation"] = e.vector_correlation;
      jc["entries"].push_back(je);
    }
    j["cells"].push_back(jc);
  }
  return j.dump(2) + "\n";
}

std::string to_json(const ConvergenceReport& r) {
  ordered_json j;
  j["type"] = "convergence";
  j["formulation"] = r.formulation;
  j["eps"] = r.eps;
  j["k"] = r.k;
  j["density"] = r.density;
  j["preset"] = r.preset;
  j["levels"] = r.levels;
  j["rows"] = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json jr;
    jr["index"] = row.index;
    jr["h"] = row.h;
    jr["dofs"] = row.dofs;
    jr["omega2_h"] = row.omega2_h;
    jr["order"] = row.fit.order;
    jr["omega2_extr"] = row.fit.lambda_extr;
    jr["constant"] = row.fit.constant;
    jr["fit_residual"] = row.fit.fit_residual;
    jr["monotone"] = row.fit.monotone;
    j["rows"].push_back(jr);
  }
  return j.dump(2) + "\n";
}

std::string to_json(const BenchReport& r) {
  ordered_json j;
  j["type"] = "bench";
  j["k"] = r.k;
  j["eps"] = r.eps;
  j["repeats"] = r.repeats;
  j["density"] = r.density;
  j["rows"] = ordered_json::array();
  for (const auto& row : r.rows) {
    ordered_json jr;
    jr["level"] = row.level;
    jr["formulation"] = row.formulation;
    jr["dofs"] = row.dofs;
    jr["nnz_k"] = row.nnz_k;
    jr["nnz_m"] = row.nnz_m;
    jr["sparsity_k"] = row.sparsity_k;
    jr["sparsity_m"] = row.sparsity_m;
    jr["assembly_seconds"] = row.assembly_seconds;
    jr["solve_seconds"] = row.solve_seconds;
    j["rows"].push_back(jr);
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::string to_csv(const SpuriousReport& r) {
  std::string out = "preset,a_s,k,index,lambda,omega2,flagged,nearest_ref,rel_mismatch\n";
  for (const auto& cell : r.cells) {
    for (size_t i = 0; i < cell.entries.size(); ++i) {
      const auto& e = cell.entries[i];
      out += cell.preset + "," + fmt(cell.a_s, "%.17g") + "," + std::to_string(cell.k) + "," +
             std::to_string(i) + "," + fmt(e.lambda, "%.17g") + "," +
             fmt(e.lambda - 1.0, "%.17g") + "," + (e.flagged ? "1" : "0") + "," +
             fmt(e.nearest_ref, "%.17g") + "," + fmt(e.rel_mismatch, "%.17g") + "\n";
    }
  }
  return out;
}

std::string to_csv(const ConvergenceReport& r) {
  std::string out = "index,level,h,dofs,omega2_h,err,order,omega2_extr\n";
  for (const auto& row : r.rows) {
    for (size_t i = 0; i < row.h.size(); ++i) {
      const int level = i < r.levels.size() ? r.levels[i] : static_cast<int>(i);
      out += std::to_string(row.index) + "," + std::to_string(level) + "," +
             fmt(row.h[i], "%.17g") + "," + std::to_string(row.dofs[i]) + "," +
             fmt(row.omega2_h[i], "%.17g") + "," +
             fmt(std::abs(row.omega2_h[i] - row.fit.lambda_extr), "%.17g") + "," +
             fmt(row.fit.order, "%.17g") + "," + fmt(row.fit.lambda_extr, "%.17g") + "\n";
    }
  }
  return out;
}

std::string to_csv(const BenchReport& r) {
  std::string out =
      "level,formulation,dofs,nnz_k,nnz_m,sparsity_k,sparsity_m,assembly_seconds,"
      "solve_seconds\n";
  for (const auto& row : r.rows) {
    out += std::to_string(row.level) + "," + row.formulation + "," +
           std::to_string(row.dofs) + "," + std::to_string(row.nnz_k) + "," +
           std::to_string(row.nnz_m) + "," + fmt(row.sparsity_k, "%.17g") + "," +
           fmt(row.sparsity_m, "%.17g") + "," + fmt(row.assembly_seconds, "%.17g") + "," +
           fmt(row.solve_seconds, "%.17g") + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aligned text
// ---------------------------------------------------------------------------

namespace {

std::string pad(const std::string& s, size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

}  // namespace

std::string to_text(const SpuriousReport& r) {
  std::ostringstream out;
  out << "spurious scan  formulation=" << r.formulation << "  eps=" << r.eps
      << "  density=" << r.density << "  tol=" << fmt(r.match_tol, "%g")
      << "  reference=" << r.reference << "\n";
  for (const auto& cell : r.cells) {
    out << "k=" << cell.k << "  preset=" << cell.preset << "  a_S=" << fmt(cell.a_s, "%.6g")
        << "  flags=" << cell.flag_count << "  (omega^2 listed)\n";
    for (const auto& e : cell.entries) {
      out << "  " << pad(fmt(e.lambda - 1.0, "%.6f"), 12)
          << (e.flagged ? "  [spurious]" : "") << "\n";
    }
  }
  return out.str();
}

std::string to_text(const ConvergenceReport& r) {
  std::ostringstream out;
  out << "convergence  formulation=" << r.formulation << "  eps=" << r.eps << "  k=" << r.k
      << "  density=" << r.density << "  preset=" << r.preset << "\n";
  out << pad("i", 3);
  for (size_t i = 0; i < r.rows.front().h.size(); ++i) {
    const int level = i < r.levels.size() ? r.levels[i] : static_cast<int>(i);
    out << pad("N=" + std::to_string(level), 12);
  }
  out << pad("order", 8) << pad("extrapolated", 14) << "\n";
  for (const auto& row : r.rows) {
    out << pad(std::to_string(row.index + 1), 3);
    for (double l : row.omega2_h) out << pad(fmt(l, "%.5f"), 12);
    out << pad(fmt(row.fit.order, "%.2f"), 8) << pad(fmt(row.fit.lambda_extr, "%.5f"), 14);
    if (!row.fit.monotone) out << "  (non-monotone)";
    out << "\n";
  }
  return out.str();
}

std::string to_text(const BenchReport& r) {
  std::ostringstream out;
  out << "benchmark  k=" << r.k << "  eps=" << r.eps << "  repeats=" << r.repeats
      << "  density=" << r.density << "\n";
  out << pad("N", 5) << pad("formulation", 14) << pad("dofs", 9) << pad("nnz(K)", 12)
      << pad("nnz(M)", 12) << pad("nnz/dof^2", 12) << pad("assembly[s]", 13)
      << pad("solve[s]", 11) << "\n";
  for (const auto& row : r.rows) {
    out << pad(std::to_string(row.level), 5) << pad(row.formulation, 14)
        << pad(std::to_string(row.dofs), 9) << pad(std::to_string(row.nnz_k), 12)
        << pad(std::to_string(row.nnz_m), 12) << pad(fmt(row.sparsity_k, "%.3e"), 12)
        << pad(fmt(row.assembly_seconds, "%.4f"), 13) << pad(fmt(row.solve_seconds, "%.4f"), 11)
        << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// SVG error curves
// ---------------------------------------------------------------------------

std::string convergence_svg(const ConvergenceReport& r) {
  constexpr int width = 640, height = 480;
  constexpr int ml = 70, mr = 20, mt = 30, mb = 50;
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  // collect log10 data
  struct Curve {
    std::string label;
    std::vector<std::pair<double, double>> pts;  // (log10 dof, log10 err)
  };
  std::vector<Curve> curves;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& row : r.rows) {
    Curve c;
    c.label = "lambda_" + std::to_string(row.index + 1);
    for (size_t i = 0; i < row.h.size(); ++i) {
      const double err = std::abs(row.omega2_h[i] - row.fit.lambda_extr);
      if (err <= 0.0) continue;
      const double x = std::log10(static_cast<double>(row.dofs[i]));
      const double y = std::log10(err);
      c.pts.push_back({x, y});
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
    if (!c.pts.empty()) curves.push_back(std::move(c));
  }
  if (curves.empty()) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
  const double xpad = 0.05 * (xmax - xmin + 1e-12), ypad = 0.05 * (ymax - ymin + 1e-12);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;

  const auto sx = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
  };
  const auto sy = [&](double y) {
    return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";

  // decade ticks
  for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax));
       ++e) {
    svg << "<line x1=\"" << sx(e) << "\" y1=\"" << height - mb << "\" x2=\"" << sx(e)
        << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << sx(e) << "\" y=\"" << height - mb + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ymin)); e <= static_cast<int>(std::floor(ymax));
       ++e) {
    svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(e) << "\" x2=\"" << ml << "\" y2=\""
        << sy(e) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << ml - 8 << "\" y=\"" << sy(e) + 4
        << "\" font-size=\"12\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  svg << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">dof</text>\n";
  svg << "<text x=\"15\" y=\"" << (mt + height - mb) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << (mt + height - mb) / 2 << ")\">|omega^2_h - omega^2_extr|</text>\n";

  // curves with point markers
  for (size_t ci = 0; ci < curves.size(); ++ci) {
    const char* color = palette[ci % 8];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : curves[ci].pts) svg << sx(x) << "," << sy(y) << " ";
    svg << "\"/>\n";
    for (const auto& [x, y] : curves[ci].pts) {
      svg << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y) << "\" r=\"3\" fill=\"" << color
          << "\"/>\n";
    }
    svg << "<text x=\"" << width - mr - 90 << "\" y=\"" << mt + 16 * (ci + 1)
        << "\" font-size=\"12\" fill=\"" << color << "\">" << curves[ci].label << "</text>\n";
  }

  // reference-slope triangle: error ~ dof^(-t/2) with t the mean fitted order
  double mean_order = 0.0;
  for (const auto& row : r.rows) mean_order += row.fit.order;
  mean_order /= static_cast<double>(r.rows.size());
  const double slope = -mean_order / 2.0;
  {
    const double x0 = xmin + 0.15 * (xmax - xmin);
    const double x1 = x0 + 0.18 * (xmax - xmin);
    const double y0 = ymin + 0.25 * (ymax - ymin);
    const double y1 = y0 + slope * (x1 - x0);
    svg << "<polygon fill=\"none\" stroke=\"black\" points=\"" << sx(x0) << "," << sy(y0)
        << " " << sx(x1) << "," << sy(y0) << " " << sx(x1) << "," << sy(y1) << "\"/>\n";
    svg << "<text x=\"" << sx(0.5 * (x0 + x1)) << "\" y=\"" << sy(y0) - 6
        << "\" font-size=\"11\" text-anchor=\"middle\">slope " << fmt(slope, "%.2f")
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace adg
