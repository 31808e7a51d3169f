#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace ef {

// Which quantity the search maximizes when ranking admissible swaps.
// Random performs no divergence computation; the search draws the commit.
enum class Objective { DeltaLom, L2, Random };

const char* to_string(Objective objective);
std::optional<Objective> objective_from_string(std::string_view name);

// Center of attribution mass: sum(score_t * t) / sum(score_t), positions
// 0-based. Throws ZeroMass when |sum(score_t)| < 1e-9.
double lom(std::span<const double> scores);

double delta_lom(std::span<const double> a, std::span<const double> b);

double l2_diff(std::span<const double> a, std::span<const double> b); // LengthMismatch

// Spearman rank correlation with average ranks for ties, clipped to [0, 1].
// Either side constant gives 0. Throws LengthMismatch / TooShort (< 2).
double rank_correlation(std::span<const double> a, std::span<const double> b);

// Overlap of the top-k positions by |score| (ties prefer the lower index),
// k = max(1, floor(fraction * n)). Returns |intersection| / k.
double topk_intersection(std::span<const double> a, std::span<const double> b,
                         double fraction = 0.5);

} // namespace ef
