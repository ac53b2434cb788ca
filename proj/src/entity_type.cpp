#include "entqa/entity_type.hpp"

namespace entqa {

std::string_view to_string(EntityType t) noexcept {
  switch (t) {
    case EntityType::DATE: return "DATE";
    case EntityType::CARDINAL: return "CARDINAL";
    case EntityType::QUANTITY: return "QUANTITY";
    case EntityType::ORDINAL: return "ORDINAL";
    case EntityType::MONEY: return "MONEY";
    case EntityType::PERCENT: return "PERCENT";
    case EntityType::TIME: return "TIME";
    case EntityType::PERSON: return "PERSON";
    case EntityType::GPE: return "GPE";
    case EntityType::ORG: return "ORG";
    case EntityType::NORP: return "NORP";
    case EntityType::LOC: return "LOC";
    case EntityType::WORK_OF_ART: return "WORK_OF_ART";
    case EntityType::FAC: return "FAC";
    case EntityType::PRODUCT: return "PRODUCT";
    case EntityType::EVENT: return "EVENT";
    case EntityType::LAW: return "LAW";
    case EntityType::LANGUAGE: return "LANGUAGE";
    case EntityType::NA: return "N/A";
  }
  return "N/A";
}

std::string_view to_string(EntityGroup g) noexcept {
  switch (g) {
    case EntityGroup::numeric: return "Numeric";
    case EntityGroup::non_numeric: return "Non-numeric";
    case EntityGroup::na: return "N/A";
  }
  return "N/A";
}

std::optional<EntityType> parse_entity_type(std::string_view name) noexcept {
  if (name == "N/A" || name == "NA" || name == "Unknown") return EntityType::NA;
  for (EntityType t : kAllEntityTypes) {
    if (t != EntityType::NA && to_string(t) == name) return t;
  }
  return std::nullopt;
}

}  // namespace entqa
