#include "ratmaps/field.hpp"

namespace ratmaps {

FieldKind parse_field(const std::string& name) {
  if (name == "q" || name == "Q" || name == "rationals") return FieldKind::Rationals;
  if (name == "f2" || name == "F2") return FieldKind::F2;
  if (name == "f3" || name == "F3") return FieldKind::F3;
  throw std::invalid_argument("unknown coefficient field '" + name + "' (expected q, f2 or f3)");
}

std::string field_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::Rationals: return "q";
    case FieldKind::F2: return "f2";
    case FieldKind::F3: return "f3";
  }
  return "?";
}

}  // namespace ratmaps
