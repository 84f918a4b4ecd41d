#pragma once

#include <string>

#include "repvar/json_io.hpp"

namespace repvar {

// The shipped schema document (schemas/repvar.schema.json is the same text).
const json& repvar_schema();

// Validates an instance against a named definition in the schema ($defs key:
// "representation", "character", "fiber_point", "matrix_path", "config",
// "certificate", ...).  Throws DomainError with a path-annotated message.
// Supports the subset of JSON Schema the document uses: type, properties,
// required, items, enum, $ref, oneOf, minItems.
void validate_against_schema(const json& instance, const std::string& def);

}  // namespace repvar
