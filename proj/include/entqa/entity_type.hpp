#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace entqa {

/// Entity category of a gold answer: the 18 NER classes plus a catch-all.
enum class EntityType {
  DATE,
  CARDINAL,
  QUANTITY,
  ORDINAL,
  MONEY,
  PERCENT,
  TIME,
  PERSON,
  GPE,
  ORG,
  NORP,
  LOC,
  WORK_OF_ART,
  FAC,
  PRODUCT,
  EVENT,
  LAW,
  LANGUAGE,
  NA,
};

inline constexpr std::size_t kEntityTypeCount = 19;

inline constexpr std::array<EntityType, kEntityTypeCount> kAllEntityTypes = {
    EntityType::DATE,    EntityType::CARDINAL,    EntityType::QUANTITY, EntityType::ORDINAL,
    EntityType::MONEY,   EntityType::PERCENT,     EntityType::TIME,     EntityType::PERSON,
    EntityType::GPE,     EntityType::ORG,         EntityType::NORP,     EntityType::LOC,
    EntityType::WORK_OF_ART, EntityType::FAC,     EntityType::PRODUCT,  EntityType::EVENT,
    EntityType::LAW,     EntityType::LANGUAGE,    EntityType::NA,
};

/// Coarse grouping used for per-entity breakdowns.
enum class EntityGroup { numeric, non_numeric, na };

constexpr bool is_numeric(EntityType t) noexcept {
  switch (t) {
    case EntityType::TIME:
    case EntityType::MONEY:
    case EntityType::QUANTITY:
    case EntityType::PERCENT:
    case EntityType::CARDINAL:
    case EntityType::DATE:
    case EntityType::ORDINAL:
      return true;
    default:
      return false;
  }
}

constexpr bool is_non_numeric(EntityType t) noexcept {
  return t != EntityType::NA && !is_numeric(t);
}

constexpr EntityGroup group_of(EntityType t) noexcept {
  if (t == EntityType::NA) return EntityGroup::na;
  return is_numeric(t) ? EntityGroup::numeric : EntityGroup::non_numeric;
}

/// Canonical name; NA renders as "N/A".
std::string_view to_string(EntityType t) noexcept;
std::string_view to_string(EntityGroup g) noexcept;

/// Accepts the 19 canonical names plus "NA", "Unknown" and "N/A" for the catch-all.
/// Case-sensitive for the NER names, as taggers emit them.
std::optional<EntityType> parse_entity_type(std::string_view name) noexcept;

}  // namespace entqa
