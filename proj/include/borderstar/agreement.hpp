#pragma once

#include <optional>

#include "borderstar/border.hpp"

namespace bsr {

// A common-knowledge component: the points of one connected component of
// the overlap graph of the agents' partition cells {t : t_i = v}.
struct MeetCell {
  std::vector<Point> points;  // sorted, canonical order
};

// Finest common coarsening of the per-agent type partitions over the
// given support points. Deterministic: cells ordered by smallest point.
std::vector<MeetCell> partition_meet(const std::vector<Point>& support, int agents);

struct CellReport {
  MeetCell cell;
  std::vector<std::optional<Rat>> constants;  // r_i when constant on the cell
  bool all_constant = false;
  std::optional<Rat> sum;  // sum of constants, when all constant
  bool checked = false;    // false: hypothesis not met, cell skipped
  bool pass = false;       // checked and sum == 1
};

struct AgreementReport {
  std::vector<CellReport> cells;
  bool pass = true;  // every checked cell sums to exactly 1
};

// Evaluates the constant-posterior sum rule on every meet cell of the
// game's support. Cells where some agent's interim value varies are
// reported as skipped, not failed.
AgreementReport agreement_check(const GameInstance& g);

}  // namespace bsr
