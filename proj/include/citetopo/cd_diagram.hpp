#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace citetopo {

struct CdDiagramLayout {
  struct Tick {
    std::string label;
    double rank = 0;
  };
  struct Bar {
    double start = 0;
    double end = 0;
    std::vector<std::string> members;
  };
  double axis_min = 1;
  double axis_max = 1;
  double cd = 0;
  std::vector<Tick> ticks;  // ascending rank, ties broken by label
  std::vector<Bar> bars;    // groups with two or more members
};

CdDiagramLayout cd_layout(const std::vector<std::string>& labels, const Eigen::VectorXd& mean_ranks,
                          const std::vector<std::vector<Eigen::Index>>& groups, double cd);

/// Byte-identical output for identical layouts.
std::string render_svg(const CdDiagramLayout& layout);

}  // namespace citetopo
