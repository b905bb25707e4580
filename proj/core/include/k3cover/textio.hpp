#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3cover/curves.hpp"
#include "k3cover/families.hpp"
#include "k3cover/geometry.hpp"

namespace k3cover {

/// Minimal key/value input format: one `key = value` per line, `#` comments,
/// repeated keys kept in order.
struct KeyValues {
  std::vector<std::pair<std::string, std::string>> entries;

  std::optional<std::string> first(const std::string& key) const;
  std::vector<std::string> all(const std::string& key) const;
};

KeyValues parse_key_values(const std::string& text);
KeyValues load_key_values(const std::string& path);

/// Complex entries with rational parts: "2", "-1/3", "i", "1+2i", "-3/2i".
CD parse_complex_entry(const std::string& text);

/// Rows separated by ';', entries by whitespace.
MatC parse_matrix(const std::string& text);

/// System file: `ambient = N`, repeated `equation = <poly>`.
/// Center file: three `form = <linear poly>` lines.
CoverSpec cover_from_files(const std::string& system_path, const std::string& center_path,
                           std::uint64_t seed);

struct FamilyFileInput {
  FamilySpec family;
  std::vector<MatC> extra_generators;  // optional `generator = ...` matrices
};

/// Family file: `label = S4|S23|S222`, required `form = <poly>` lines in
/// order, optional `generator = <matrix>` rows to verify alongside the
/// canonical group.
FamilyFileInput family_from_file(const std::string& path, std::uint64_t seed);

/// Curve file: `quartic = <poly>`.
PlaneQuartic quartic_from_file(const std::string& path, std::uint64_t seed);

}  // namespace k3cover
