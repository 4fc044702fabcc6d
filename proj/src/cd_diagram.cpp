#include "citetopo/cd_diagram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "citetopo/error.hpp"

namespace citetopo {

CdDiagramLayout cd_layout(const std::vector<std::string>& labels, const Eigen::VectorXd& mean_ranks,
                          const std::vector<std::vector<Eigen::Index>>& groups, double cd) {
  if (static_cast<Eigen::Index>(labels.size()) != mean_ranks.size())
    throw InvalidArgument("cd_layout: label and rank counts differ");
  CdDiagramLayout l;
  l.cd = cd;
  l.axis_min = 1;
  l.axis_max = std::max<double>(2, static_cast<double>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i)
    l.ticks.push_back({labels[i], mean_ranks(static_cast<Eigen::Index>(i))});
  std::sort(l.ticks.begin(), l.ticks.end(),
            [](const auto& a, const auto& b) { return a.rank != b.rank ? a.rank < b.rank : a.label < b.label; });
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    CdDiagramLayout::Bar bar;
    bar.start = mean_ranks(g.front());
    bar.end = bar.start;
    for (auto i : g) {
      bar.start = std::min(bar.start, mean_ranks(i));
      bar.end = std::max(bar.end, mean_ranks(i));
      bar.members.push_back(labels[static_cast<std::size_t>(i)]);
    }
    l.bars.push_back(std::move(bar));
  }
  return l;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
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

}  // namespace

std::string render_svg(const CdDiagramLayout& l) {
  constexpr double width = 640, margin = 120, axis_y = 70, row_h = 22;
  const double span = l.axis_max - l.axis_min;
  auto x_of = [&](double rank) { return margin + (rank - l.axis_min) / span * (width - 2 * margin); };

  const std::size_t left = (l.ticks.size() + 1) / 2;
  const double height = axis_y + 40 + row_h * static_cast<double>(std::max(left, l.ticks.size() - left)) +
                        12 * static_cast<double>(l.bars.size());

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // critical difference bar
  os << "<line x1=\"" << fmt(x_of(l.axis_min)) << "\" y1=\"20\" x2=\"" << fmt(x_of(l.axis_min + l.cd))
     << "\" y2=\"20\" stroke=\"black\" stroke-width=\"2\"/>\n";
  os << "<text x=\"" << fmt(x_of(l.axis_min)) << "\" y=\"14\">CD = " << fmt(l.cd) << "</text>\n";

  os << "<line x1=\"" << fmt(x_of(l.axis_min)) << "\" y1=\"" << fmt(axis_y) << "\" x2=\""
     << fmt(x_of(l.axis_max)) << "\" y2=\"" << fmt(axis_y) << "\" stroke=\"black\"/>\n";
  for (int r = static_cast<int>(std::ceil(l.axis_min)); r <= static_cast<int>(std::floor(l.axis_max)); ++r) {
    os << "<line x1=\"" << fmt(x_of(r)) << "\" y1=\"" << fmt(axis_y - 6) << "\" x2=\"" << fmt(x_of(r))
       << "\" y2=\"" << fmt(axis_y) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(x_of(r)) << "\" y=\"" << fmt(axis_y - 10) << "\" text-anchor=\"middle\">" << r
       << "</text>\n";
  }

  const double bars_y = axis_y + 10;
  for (std::size_t b = 0; b < l.bars.size(); ++b) {
    const double y = bars_y + 12 * static_cast<double>(b);
    os << "<line x1=\"" << fmt(x_of(l.bars[b].start) - 3) << "\" y1=\"" << fmt(y) << "\" x2=\""
       << fmt(x_of(l.bars[b].end) + 3) << "\" y2=\"" << fmt(y) << "\" stroke=\"black\" stroke-width=\"4\"/>\n";
  }

  const double labels_y = bars_y + 12 * static_cast<double>(l.bars.size()) + 10;
  for (std::size_t i = 0; i < l.ticks.size(); ++i) {
    const bool on_left = i < left;
    const std::size_t row = on_left ? i : l.ticks.size() - 1 - i;
    const double y = labels_y + row_h * static_cast<double>(row);
    const double x = x_of(l.ticks[i].rank);
    const double text_x = on_left ? margin - 10 : width - margin + 10;
    os << "<polyline points=\"" << fmt(x) << ',' << fmt(axis_y) << ' ' << fmt(x) << ',' << fmt(y) << ' '
       << fmt(text_x) << ',' << fmt(y) << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << fmt(on_left ? text_x - 4 : text_x + 4) << "\" y=\"" << fmt(y + 4)
       << "\" text-anchor=\"" << (on_left ? "end" : "start") << "\">" << escape(l.ticks[i].label) << " ("
       << fmt(l.ticks[i].rank) << ")</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace citetopo
