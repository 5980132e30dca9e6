/// @file text.hpp
/// Deterministic number/string formatting shared by reports, CSV emission and
/// the CLI.  All floating point output funnels through these helpers so that
/// identical runs produce byte-identical artifacts.
#pragma once

#include <string>
#include <vector>

namespace orlicz {

/// "%.12g" with "inf" / "-inf" for infinities.  Report precision.
std::string fmt_num(double v);

/// "%.17g" with "inf" for infinities.  Lossless round-trip precision.
std::string fmt_full(double v);

std::string fmt_int(long long v);

/// "(a, b, c)" using fmt_num.
std::string fmt_vec(const std::vector<double>& v);

std::string join(const std::vector<std::string>& parts, const std::string& sep);

/// Strict double parse of a whole token ("inf" accepted); throws on trailing
/// garbage or empty input.
double parse_num(const std::string& tok);

std::vector<std::string> split_ws(const std::string& line);
std::string trim(const std::string& s);

}  // namespace orlicz
