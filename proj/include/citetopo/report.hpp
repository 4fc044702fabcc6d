#pragma once

#include <ostream>

#include "citetopo/cd_diagram.hpp"
#include "citetopo/compare.hpp"
#include "json.hpp"

namespace citetopo {

/// NaN becomes null and infinities become the strings "+inf" / "-inf".
nlohmann::ordered_json json_number(double v);

nlohmann::ordered_json comparison_to_json(const ComparisonReport& r);

/// Long format: dataset, statistic, value, residual, p_value, rank (empty
/// when the statistic was not selected for ranking).
void write_residual_csv(std::ostream& out, const ComparisonReport& r);

/// dataset, mean_rank
void write_rank_csv(std::ostream& out, const ComparisonReport& r);

CdDiagramLayout cd_layout(const ComparisonReport& r);

}  // namespace citetopo
