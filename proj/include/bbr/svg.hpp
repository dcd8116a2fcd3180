#pragma once

// Static grouped bar charts of success frequencies.

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace bbr::svg {

struct Series {
  std::string name;
  std::vector<double> values;  // one fraction in [0, 1] per group
};

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline void grouped_bars(std::ostream& os, const std::string& title, const std::string& x_label,
                         const std::vector<std::string>& groups, const std::vector<Series>& series) {
  static const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948"};
  const double left = 70, right = 20, top = 50, bottom = 70, plot_h = 300;
  const double bar_w = 28, group_gap = 24;
  const double group_w = bar_w * static_cast<double>(std::max<std::size_t>(series.size(), 1)) + group_gap;
  const double plot_w = std::max(200.0, group_w * static_cast<double>(groups.size()));
  const double width = left + plot_w + right + 130, height = top + plot_h + bottom;

  char buf[512];
#define BBR_SVG_EMIT(...)                      \
  do {                                         \
    std::snprintf(buf, sizeof buf, __VA_ARGS__); \
    os << buf;                                 \
  } while (0)

  BBR_SVG_EMIT("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" font-family=\"sans-serif\" font-size=\"11\">\n",
       width, height);
  BBR_SVG_EMIT("<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n");
  BBR_SVG_EMIT("<text x=\"%.1f\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">%s</text>\n", left + plot_w / 2,
       escape(title).c_str());

  for (int pct = 0; pct <= 100; pct += 20) {
    const double y = top + plot_h * (1.0 - pct / 100.0);
    BBR_SVG_EMIT("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>\n", left, y, left + plot_w, y);
    BBR_SVG_EMIT("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%d%%</text>\n", left - 6, y + 4, pct);
  }
  BBR_SVG_EMIT("<text x=\"18\" y=\"%.1f\" transform=\"rotate(-90 18 %.1f)\" text-anchor=\"middle\">success frequency</text>\n",
       top + plot_h / 2, top + plot_h / 2);

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double gx = left + group_gap / 2 + static_cast<double>(g) * group_w;
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double v = g < series[s].values.size() ? std::clamp(series[s].values[g], 0.0, 1.0) : 0.0;
      const double h = plot_h * v;
      const double x = gx + static_cast<double>(s) * bar_w;
      BBR_SVG_EMIT("<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"%s\"/>\n", x, top + plot_h - h,
           bar_w - 2, h, kPalette[s % 6]);
      BBR_SVG_EMIT("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"9\">%.0f%%</text>\n",
           x + (bar_w - 2) / 2, top + plot_h - h - 3, 100.0 * v);
    }
    BBR_SVG_EMIT("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n",
         gx + (group_w - group_gap) / 2, top + plot_h + 18, escape(groups[g]).c_str());
  }
  BBR_SVG_EMIT("<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", left, top + plot_h,
       left + plot_w, top + plot_h);
  BBR_SVG_EMIT("<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n", left + plot_w / 2,
       top + plot_h + 45, escape(x_label).c_str());

  for (std::size_t s = 0; s < series.size(); ++s) {
    const double ly = top + 10 + 18 * static_cast<double>(s);
    BBR_SVG_EMIT("<rect x=\"%.1f\" y=\"%.1f\" width=\"12\" height=\"12\" fill=\"%s\"/>\n", left + plot_w + 15, ly,
         kPalette[s % 6]);
    BBR_SVG_EMIT("<text x=\"%.1f\" y=\"%.1f\">%s</text>\n", left + plot_w + 32, ly + 10, escape(series[s].name).c_str());
  }
  os << "</svg>\n";
#undef BBR_SVG_EMIT
}

}  // namespace bbr::svg
