#pragma once

#include <string>
#include <string_view>

#include "efx/instance.hpp"

namespace efx {

// Instance document: {"m": int, "n": int, "values": [[real; n]; m]}.
// All three keys are mandatory; the matrix is one row per item.
// Errors are InputError with the offending 1-based row/column when known.
Instance parse_instance(std::string_view text);
std::string instance_document(const Instance& inst);

// Allocation document: {"owner": [int; m]} with 1-based agent ids.
Allocation parse_allocation(std::string_view text, std::size_t agents);
std::string allocation_document(const Allocation& alloc);

// Matrix documents keyed by name, e.g. {"y": [[...], ...]} or {"x": ...}.
// Returns an empty matrix when the key is absent.
Matrix parse_matrix_field(std::string_view text, const std::string& key);

std::string read_text_file(const std::string& path);

}  // namespace efx
