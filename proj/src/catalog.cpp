#include "wavegen/catalog.hpp"

#include <numbers>

namespace wavegen {

namespace {

std::vector<ReferenceEntry> make_catalog() {
  const double h = std::numbers::sqrt2 / 2.0;
  std::vector<ReferenceEntry> entries;
  entries.push_back({"haar", Filter({h, h}), "Haar low-pass; exact n=1 solution", 1e-15});
  entries.push_back({"db3",
                     Filter({0.0352, -0.0854, -0.1350, 0.4599, 0.8069, 0.3327}),
                     "Daubechies db3 decomposition low-pass, 4-decimal rounding", 5e-4});
  entries.push_back({"db3-exact",
                     Filter({0.035226291885486129, -0.085441273881518093, -0.1350110200103681,
                             0.45987750211796907, 0.80689150931142928, 0.33267055295009634}),
                     "Daubechies db3 decomposition low-pass, double-precision solution", 1e-14});
  entries.push_back({"table1-n4",
                     Filter({0.2856, 0.3308, -0.2345, 0.2736, 0.1858, 0.5086, 0.4702, -0.4060}),
                     "published length-8 reference solution, 4-decimal rounding", 2e-3});
  entries.push_back({"table1-n5",
                     Filter({-0.1033, -0.3900, 0.1541, -0.1268, 0.0538, -0.0284, -0.0284, -0.3693,
                             -0.7832, 0.2075}),
                     "published length-10 reference solution, 4-decimal rounding", 2e-3});
  entries.push_back({"table1-n6",
                     Filter({-0.5898, -0.6356, 0.0314, -0.1777, -0.2926, 0.1314, 0.1024, 0.0530,
                             0.1706, -0.1982, -0.1292, 0.1199}),
                     "published length-12 reference solution, 4-decimal rounding", 2e-3});
  entries.push_back({"table1-n7",
                     Filter({0.2234, -0.8473, -0.2672, 0.0400, -0.0054, 0.0682, -0.0561, 0.0384,
                             -0.0983, 0.0357, -0.2041, 0.0369, -0.2995, -0.0790}),
                     "published length-14 reference solution, 4-decimal rounding", 2e-3});
  entries.push_back({"table1-n8",
                     Filter({-0.0021, -0.0010, 0.0659, 0.0397, 0.0351, -0.2904, 0.0667, 0.1552,
                             -0.1573, 0.0316, -0.0071, 0.3433, 0.7973, 0.2286, -0.0913, 0.2000}),
                     "published length-16 reference solution, 4-decimal rounding", 2e-3});
  entries.push_back({"fig2-n16taps",
                     Filter({0.5875, -0.0583, -0.1553, 0.0594, 0.2736, -0.0376, -0.0432, -0.1493,
                             -0.0068, 0.4646, 0.0597, 0.5446, -0.0043, -0.0748, -0.0041, -0.0414}),
                     "published length-16 converged solution, 4-decimal rounding", 2e-3});
  return entries;
}

}  // namespace

const std::vector<ReferenceEntry>& catalog() {
  static const std::vector<ReferenceEntry> entries = make_catalog();
  return entries;
}

const ReferenceEntry* lookup(std::string_view name) {
  for (const auto& entry : catalog()) {
    if (entry.name == name) return &entry;
  }
  return nullptr;
}

}  // namespace wavegen
