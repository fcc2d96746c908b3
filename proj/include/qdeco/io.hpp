#pragma once

#include <string>

namespace qdeco {

/// Shortest round-trip decimal form of x (at most 17 significant digits),
/// independent of the global locale. Non-finite values print as nan/inf/-inf.
std::string format_number(double x);

}  // namespace qdeco
