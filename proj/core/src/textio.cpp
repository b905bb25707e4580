#include "k3cover/textio.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "k3cover/errors.hpp"

namespace k3cover {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

std::optional<std::string> KeyValues::first(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  return std::nullopt;
}

std::vector<std::string> KeyValues::all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries)
    if (k == key) out.push_back(v);
  return out;
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw InputError("line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty() || val.empty())
      throw InputError("line " + std::to_string(lineno) + ": empty key or value");
    kv.entries.emplace_back(std::move(key), std::move(val));
  }
  return kv;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str());
}

CD parse_complex_entry(const std::string& text) {
  // [rational][(+|-)[rational]i] | [+-]?[rational]?i
  std::string t = trim(text);
  if (t.empty()) throw InputError("empty matrix entry");
  auto is_num_char = [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '.';
  };
  size_t i = 0;
  auto read_signed = [&](bool* neg) {
    *neg = false;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) *neg = t[i++] == '-';
    size_t start = i;
    while (i < t.size() && is_num_char(t[i])) ++i;
    return t.substr(start, i - start);
  };
  auto to_double = [&](const std::string& s, bool neg) {
    if (s.empty()) return neg ? -1.0 : 1.0;  // bare "i"
    double v;
    if (s.find('/') != std::string::npos) {
      v = k3cover::to_double(parse_rational(s));
    } else if (s.find('.') != std::string::npos) {
      v = std::stod(s);
    } else {
      v = k3cover::to_double(parse_rational(s));
    }
    return neg ? -v : v;
  };
  bool neg1 = false;
  std::string first = read_signed(&neg1);
  if (i < t.size() && t[i] == 'i') {
    ++i;
    if (i != t.size()) throw InputError("bad matrix entry: " + text);
    return CD(0.0, to_double(first, neg1));
  }
  if (first.empty()) throw InputError("bad matrix entry: " + text);
  double re = to_double(first, neg1);
  if (i == t.size()) return CD(re, 0.0);
  bool neg2 = false;
  std::string second = read_signed(&neg2);
  if (i >= t.size() || t[i] != 'i' || i + 1 != t.size())
    throw InputError("bad matrix entry: " + text);
  return CD(re, to_double(second, neg2));
}

MatC parse_matrix(const std::string& text) {
  std::vector<std::vector<CD>> rows;
  std::istringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::istringstream es(row);
    std::vector<CD> entries;
    std::string tok;
    while (es >> tok) entries.push_back(parse_complex_entry(tok));
    if (!entries.empty()) rows.push_back(std::move(entries));
  }
  if (rows.empty()) throw InputError("empty matrix");
  const size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) throw InputError("matrix must be square (rows separated by ';')");
  MatC m(static_cast<int>(n), static_cast<int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

CoverSpec cover_from_files(const std::string& system_path, const std::string& center_path,
                           std::uint64_t seed) {
  KeyValues sys = load_key_values(system_path);
  KeyValues ctr = load_key_values(center_path);
  auto ambient_str = sys.first("ambient");
  if (!ambient_str) throw InputError(system_path + ": missing 'ambient'");
  int ambient = std::stoi(*ambient_str);
  if (ambient < 3 || ambient > 8) throw InputError("ambient dimension out of range");
  std::vector<PolyQ> eqs;
  for (const std::string& s : sys.all("equation"))
    eqs.push_back(parse_poly_exact(s, static_cast<unsigned>(ambient) + 1));
  if (eqs.empty()) throw InputError(system_path + ": no 'equation' entries");
  std::vector<PolyQ> forms;
  for (const std::string& s : ctr.all("form"))
    forms.push_back(parse_poly_exact(s, static_cast<unsigned>(ambient) + 1));
  if (forms.size() != 3) throw InputError(center_path + ": a projection center needs 3 'form' lines");
  return CoverSpec::make_exact(ambient, std::move(eqs), std::move(forms), seed);
}

FamilyFileInput family_from_file(const std::string& path, std::uint64_t seed) {
  KeyValues kv = load_key_values(path);
  auto label_str = kv.first("label");
  if (!label_str) throw InputError(path + ": missing 'label'");
  auto label = parse_family_label(*label_str);
  if (!label) throw InputError(path + ": unknown family label '" + *label_str + "'");
  std::vector<PolyQ> forms;
  for (const std::string& s : kv.all("form")) forms.push_back(parse_poly_exact(s, 3));
  FamilyFileInput out;
  if (forms.empty() && *label == FamilyLabel::S4)
    out.family = fermat_family(seed);  // `label = fermat` shorthand
  else
    out.family = build_family(*label, std::move(forms), seed);
  for (const std::string& g : kv.all("generator")) out.extra_generators.push_back(parse_matrix(g));
  return out;
}

PlaneQuartic quartic_from_file(const std::string& path, std::uint64_t seed) {
  KeyValues kv = load_key_values(path);
  auto q = kv.first("quartic");
  if (!q) throw InputError(path + ": missing 'quartic'");
  return PlaneQuartic::make(parse_poly_exact(*q, 3), seed);
}

}  // namespace k3cover
