#pragma once

#include <string>

namespace qdblab {

/// Shortest form with 17 significant digits, '.' decimal point; "nan"/"inf".
std::string fmt(double x);

} // namespace qdblab
