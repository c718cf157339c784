#pragma once

#include "catperc/harness.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace catperc {

/// Extra header lines (e.g. CLI flags) written before the spec description.
using HeaderLines = std::vector<std::pair<std::string, std::string>>;

/// '#'-prefixed config lines, then the header
/// experiment,n,L,p,q,n0,estimate,stderr,reps,truncated,seed and one row per
/// (point, statistic). Numbers use 17 significant digits; empty cells mean
/// "not applicable".
void write_csv(std::ostream& out, const RunResult& result, const HeaderLines& extra = {});

/// {"config": {...}, "complete": bool, "rows": [...]} with the same numbers.
void write_json(std::ostream& out, const RunResult& result, const HeaderLines& extra = {});

/// One line chart per statistic: estimate against the varying parameter,
/// with a shaded one-standard-error band.
void write_svg(std::ostream& out, const RunResult& result);

/// %.17g formatting; non-finite values as inf, -inf, nan.
std::string format_number(double x);

}  // namespace catperc
