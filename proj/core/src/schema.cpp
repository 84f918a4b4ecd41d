#include "repvar/schema.hpp"

namespace repvar {

namespace {

// Kept in sync with schemas/repvar.schema.json (same document).
constexpr const char* kSchemaText = R"JSON(
{
  "$id": "repvar.schema.json",
  "description": "Wire formats for the repvar toolkit. Complex numbers are [re, im]; the exact backend encodes each part as a rational string \"p/q\", the float backend as a number.",
  "$defs": {
    "complex": {
      "type": "array", "minItems": 2, "maxItems": 2,
      "items": { "oneOf": [ {"type": "number"}, {"type": "string"} ] }
    },
    "mat2": {
      "type": "array", "minItems": 2, "maxItems": 2,
      "items": {
        "type": "array", "minItems": 2, "maxItems": 2,
        "items": { "$ref": "#/$defs/complex" }
      }
    },
    "word": {
      "type": "array",
      "items": {
        "type": "array", "minItems": 2, "maxItems": 2,
        "items": { "type": "integer" }
      }
    },
    "presentation": {
      "type": "object",
      "required": ["kind"],
      "properties": {
        "kind": { "enum": ["free", "surface"] },
        "rank": { "type": "integer" },
        "genus": { "type": "integer" }
      }
    },
    "representation": {
      "type": "object",
      "required": ["presentation", "images"],
      "properties": {
        "presentation": { "$ref": "#/$defs/presentation" },
        "images": { "type": "array", "items": { "$ref": "#/$defs/mat2" } }
      }
    },
    "character": {
      "type": "object",
      "required": ["words", "traces"],
      "properties": {
        "words": { "type": "array", "items": { "$ref": "#/$defs/word" } },
        "traces": { "type": "array", "items": { "$ref": "#/$defs/complex" } }
      }
    },
    "fiber_point": {
      "type": "object",
      "required": ["A", "B", "target"],
      "properties": {
        "A": { "$ref": "#/$defs/mat2" },
        "B": { "$ref": "#/$defs/mat2" },
        "target": { "$ref": "#/$defs/mat2" },
        "residual": { "type": "number" }
      }
    },
    "matrix_path": {
      "type": "object",
      "required": ["samples"],
      "properties": {
        "samples": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["t", "matrices"],
            "properties": {
              "t": { "type": "number" },
              "matrices": { "type": "array", "items": { "$ref": "#/$defs/mat2" } }
            }
          }
        },
        "step_bound": { "type": "number" }
      }
    },
    "boundary_target": {
      "type": "object",
      "required": ["matrix"],
      "properties": {
        "matrix": { "$ref": "#/$defs/mat2" },
        "smallness": { "type": "number" }
      }
    },
    "config": {
      "type": "object",
      "properties": {
        "backend": { "enum": ["exact", "float"] },
        "det_tolerance": { "type": "number" },
        "fiber_tolerance": { "type": "number" },
        "relator_tolerance": { "type": "number" },
        "fixpoint_tolerance": { "type": "number" },
        "smallness_bound": { "type": "number" },
        "detour_radius": { "type": "number" },
        "newton_max_iters": { "type": "integer" },
        "seed": { "type": "integer" }
      }
    },
    "certificate": {
      "type": "object",
      "required": ["pass", "w_conditions", "scc_checks"],
      "properties": {
        "pass": { "type": "boolean" },
        "w_conditions": { "type": "object" },
        "relator_residual": { "type": "string" },
        "kernel_witness_word": { "$ref": "#/$defs/word" },
        "witness_residual": { "type": "string" },
        "scc_checks": { "type": "array" },
        "real_trace_samples": { "type": "array" },
        "seed": { "type": "integer" },
        "sample_count": { "type": "integer" },
        "max_word_len": { "type": "integer" },
        "failures": { "type": "array", "items": { "type": "string" } }
      }
    },
    "suite_report": {
      "type": "object",
      "required": ["checks", "all_pass"],
      "properties": {
        "all_pass": { "type": "boolean" },
        "checks": {
          "type": "array",
          "items": {
            "type": "object",
            "required": ["id", "name", "pass", "seconds"],
            "properties": {
              "id": { "type": "string" },
              "name": { "type": "string" },
              "group": { "type": "string" },
              "pass": { "type": "boolean" },
              "seconds": { "type": "number" },
              "details": { "type": "string" }
            }
          }
        }
      }
    }
  }
}
)JSON";

json load_schema() { return json::parse(kSchemaText); }

void check(const json& inst, const json& schema, const json& root,
           const std::string& path);

void check_ref(const json& inst, const std::string& ref, const json& root,
               const std::string& path) {
  const std::string prefix = "#/$defs/";
  if (ref.rfind(prefix, 0) != 0)
    throw DomainError("schema: unsupported $ref " + ref);
  std::string name = ref.substr(prefix.size());
  const auto& defs = root.at("$defs");
  if (!defs.contains(name))
    throw DomainError("schema: missing definition " + name);
  check(inst, defs.at(name), root, path);
}

bool type_matches(const json& inst, const std::string& type) {
  if (type == "object") return inst.is_object();
  if (type == "array") return inst.is_array();
  if (type == "string") return inst.is_string();
  if (type == "number") return inst.is_number();
  if (type == "integer") return inst.is_number_integer();
  if (type == "boolean") return inst.is_boolean();
  if (type == "null") return inst.is_null();
  throw DomainError("schema: unknown type " + type);
}

void check(const json& inst, const json& schema, const json& root,
           const std::string& path) {
  if (schema.contains("$ref")) {
    check_ref(inst, schema.at("$ref").get<std::string>(), root, path);
    return;
  }
  if (schema.contains("oneOf")) {
    for (const auto& alt : schema.at("oneOf")) {
      try {
        check(inst, alt, root, path);
        return;
      } catch (const DomainError&) {
      }
    }
    throw DomainError(path + ": no oneOf alternative matched");
  }
  if (schema.contains("enum")) {
    for (const auto& v : schema.at("enum"))
      if (inst == v) return;
    throw DomainError(path + ": value not in enum");
  }
  if (schema.contains("type") &&
      !type_matches(inst, schema.at("type").get<std::string>()))
    throw DomainError(path + ": expected " +
                      schema.at("type").get<std::string>());
  if (inst.is_object()) {
    if (schema.contains("required"))
      for (const auto& req : schema.at("required"))
        if (!inst.contains(req.get<std::string>()))
          throw DomainError(path + ": missing required key '" +
                            req.get<std::string>() + "'");
    if (schema.contains("properties"))
      for (auto it = schema.at("properties").begin();
           it != schema.at("properties").end(); ++it)
        if (inst.contains(it.key()))
          check(inst.at(it.key()), it.value(), root, path + "/" + it.key());
  }
  if (inst.is_array()) {
    if (schema.contains("minItems") &&
        inst.size() < schema.at("minItems").get<std::size_t>())
      throw DomainError(path + ": too few items");
    if (schema.contains("maxItems") &&
        inst.size() > schema.at("maxItems").get<std::size_t>())
      throw DomainError(path + ": too many items");
    if (schema.contains("items")) {
      std::size_t idx = 0;
      for (const auto& el : inst) {
        check(el, schema.at("items"), root,
              path + "/" + std::to_string(idx));
        ++idx;
      }
    }
  }
}

}  // namespace

const json& repvar_schema() {
  static const json schema = load_schema();
  return schema;
}

void validate_against_schema(const json& instance, const std::string& def) {
  const json& root = repvar_schema();
  const auto& defs = root.at("$defs");
  if (!defs.contains(def))
    throw DomainError("schema: no definition named " + def);
  check(instance, defs.at(def), root, def);
}

}  // namespace repvar
