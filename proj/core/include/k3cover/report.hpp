#pragma once

#include <string>

#include "k3cover/classify.hpp"
#include "k3cover/curves.hpp"
#include "k3cover/families.hpp"
#include "k3cover/group.hpp"
#include "k3cover/monodromy.hpp"

namespace k3cover {

enum class ReportFormat { Plain, Structured };

std::string format_complex(CD z);

std::string render_classification(const std::vector<ExclusionVerdict>& rows, ReportFormat fmt,
                                  bool diagnostic);

std::string render_monodromy(const MonodromyResult& res, std::uint64_t seed, ReportFormat fmt);

std::string render_bitangents(const BitangentReport& rep, std::uint64_t seed, ReportFormat fmt);

std::string render_euler(const BranchDatum& datum, long chi, ReportFormat fmt);

/// Consolidated verification certificate for one family.
struct VerifyCertificate {
  std::string family_label;
  std::uint64_t seed = 0;
  long group_order = 0;
  std::vector<int> group_order_multiset;
  std::string group_label;
  bool construction_ok = false;
  bool smoothness_probe_ok = false;
  CriterionReport criterion;
  GammaDecomposition gamma;
  bool hypersurface_rule_ok = false;
  CharacterTable characters;
  double character_oracle_gap = 0;  // |formula - residue oracle| over generators
  MonodromyResult monodromy;
  bool group_matches = false;
  int expected_genus = 0;
  RamificationLedger ledger;
  bool tower_ok = false;  // S222 only; true elsewhere
  std::array<int, 3> tower_sizes{0, 0, 0};
  std::vector<std::string> extra_generator_notes;
  bool all_ok = false;
  std::string failed_stage;
};

std::string render_certificate(const VerifyCertificate& cert, ReportFormat fmt);

}  // namespace k3cover
