#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entqa/entity_type.hpp"

namespace entqa {

enum class DatasetId { nq, tq };

std::string_view to_string(DatasetId d) noexcept;
std::optional<DatasetId> parse_dataset_id(std::string_view s) noexcept;

/// Exemplar groups. Several entity types share `other`; NA and ORDINAL use
/// `unknown` (labelled "Unknown" for NQ and "N/A" for TQ).
enum class BankKey { DATE, CARDINAL, QUANTITY, MONEY, PERCENT, TIME, PERSON, GPE, ORG, other, unknown };

inline constexpr std::size_t kBankKeyCount = 11;
inline constexpr std::size_t kExemplarsPerBank = 8;

std::string_view to_string(BankKey k) noexcept;
BankKey bank_key_for(EntityType t) noexcept;

struct Exemplar {
  std::string question;
  std::vector<std::string> expanded_answers;
};

struct FewShotBank {
  DatasetId dataset = DatasetId::nq;
  /// Indexed by BankKey; an empty group means the bank does not cover it.
  std::vector<std::vector<Exemplar>> groups = std::vector<std::vector<Exemplar>>(kBankKeyCount);

  const std::vector<Exemplar>& group(BankKey k) const { return groups[static_cast<std::size_t>(k)]; }
  /// Every exemplar, group by group in BankKey order.
  std::vector<const Exemplar*> all() const;
};

/// The shipped NQ and TQ banks, transcribed as published (typos included).
const FewShotBank& builtin_bank(DatasetId d);

}  // namespace entqa
