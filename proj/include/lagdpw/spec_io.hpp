#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lagdpw/dpw.hpp"

namespace lagdpw {

// A parsed spec file: the potential plus the optional run settings it carries.
struct SpecDocument {
  PotentialSpec spec;
  std::optional<GridDescriptor> grid;
  std::vector<Complex> lambdas;
  std::optional<double> tol;
  // Non-fatal notes, one per automatic normalization that was applied.
  std::vector<std::string> notes;
  // Rotational specs: the symmetry matrix; radial specs: p0 of the homogeneity.
  std::optional<Matrix3> symmetry_T;
};

// Throws SchemaError with a JSON path ("$.grid.counts[1]") for malformed input
// or unknown fields. Numerical preconditions of the constructors surface as
// their own error kinds.
SpecDocument parse_spec_json(const std::string& text);
SpecDocument parse_spec_file(const std::string& path);

// Serializes the potential in the same schema. Normalized, radial and
// rotational kinds are written as "normalized" with the resulting slots;
// constant_degree_one writes its coefficient matrices.
std::string spec_to_json(const PotentialSpec& spec, int indent = 2);

}  // namespace lagdpw
