#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wavegen/filterbank.hpp"

namespace wavegen {

/// A published or otherwise fixed reference low-pass filter.
struct ReferenceEntry {
  std::string name;
  Filter taps;
  std::string source;
  /// Residual budget this entry is expected to meet given the precision its
  /// coefficients were published at.
  double tolerance;
};

/// Built-in reference filters. Names are stable identifiers: haar, db3,
/// db3-exact, table1-n4 .. table1-n8, fig2-n16taps.
const std::vector<ReferenceEntry>& catalog();

/// Returns nullptr when no entry has that name.
const ReferenceEntry* lookup(std::string_view name);

}  // namespace wavegen
