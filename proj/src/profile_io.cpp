#include "lexidiv/profile_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "lexidiv/csv.hpp"
#include "lexidiv/error.hpp"

namespace lexidiv::profile_io {

using measures::Measure;
using measures::ProfiledText;

namespace {

double parse_double(const std::string& s, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(where + ": '" + s + "' is not a number");
  return v;
}

long parse_long(const std::string& s, const std::string& where) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(where + ": '" + s + "' is not an integer");
  return v;
}

void check(const ProfiledText& row, const std::string& where) {
  if (row.id.empty()) throw ParseError(where + ": empty id");
  if (!corpus::parse_group_key(row.group)) throw ParseError(where + ": unknown group key '" + row.group + "'");
  if (auto bad = measures::invariant_violation(row.profile); !bad.empty())
    throw ParseError(where + ": field '" + bad + "' outside its domain");
}

std::vector<ProfiledText> parse_csv(std::string_view content, std::string_view source) {
  const auto lines = csv::lines(content);
  if (lines.empty() || lines.front() != kCsvHeader)
    throw ParseError(std::string(source) + ": expected header '" + std::string(kCsvHeader) + "'");
  std::vector<ProfiledText> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(i + 1);
    const auto f = csv::split_line(lines[i]);
    if (f.size() != 8) throw ParseError(where + ": expected 8 fields, found " + std::to_string(f.size()));
    ProfiledText row;
    row.id = f[0];
    row.group = f[1];
    row.profile.volume = parse_long(f[2], where);
    row.profile.abundance = parse_long(f[3], where);
    row.profile.mattr = parse_double(f[4], where);
    row.profile.evenness = parse_double(f[5], where);
    row.profile.disparity = parse_double(f[6], where);
    row.profile.dispersion = parse_double(f[7], where);
    check(row, where);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ProfiledText> parse_json(std::string_view content, std::string_view source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(source) + ": " + e.what());
  }
  if (!doc.is_array()) throw ParseError(std::string(source) + ": expected a JSON array");
  std::vector<ProfiledText> rows;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string where = std::string(source) + "[" + std::to_string(i) + "]";
    const auto& o = doc[i];
    try {
      ProfiledText row;
      row.id = o.at("id").get<std::string>();
      row.group = o.at("group").get<std::string>();
      row.profile.volume = o.at("volume").get<long>();
      row.profile.abundance = o.at("abundance").get<long>();
      row.profile.mattr = o.at("mattr").get<double>();
      row.profile.evenness = o.at("evenness").get<double>();
      row.profile.disparity = o.at("disparity").get<double>();
      row.profile.dispersion = o.at("dispersion").get<double>();
      check(row, where);
      rows.push_back(std::move(row));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace

std::string to_csv(std::span<const ProfiledText> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    const auto& p = r.profile;
    out += fmt::format("{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n", csv::escape(r.id), csv::escape(r.group),
                       p.volume, p.abundance, p.mattr, p.evenness, p.disparity, p.dispersion);
  }
  return out;
}

std::string to_json(std::span<const ProfiledText> rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back(nlohmann::ordered_json{{"id", r.id},
                   {"group", r.group},
                   {"volume", r.profile.volume},
                   {"abundance", r.profile.abundance},
                   {"mattr", r.profile.mattr},
                   {"evenness", r.profile.evenness},
                   {"disparity", r.profile.disparity},
                   {"dispersion", r.profile.dispersion}});
  }
  return arr.dump(2) + "\n";
}

std::string to_text(std::span<const ProfiledText> rows) {
  std::size_t id_w = 2, group_w = 5;
  for (const auto& r : rows) {
    id_w = std::max(id_w, r.id.size());
    group_w = std::max(group_w, r.group.size());
  }
  std::string out = fmt::format("{:<{}}  {:<{}}  {:>7}  {:>9}  {:>8}  {:>8}  {:>9}  {:>10}\n", "id", id_w, "group",
                                group_w, "volume", "abundance", "mattr", "evenness", "disparity", "dispersion");
  for (const auto& r : rows) {
    const auto& p = r.profile;
    out += fmt::format("{:<{}}  {:<{}}  {:>7}  {:>9}  {:>8.3f}  {:>8.4f}  {:>9.4f}  {:>10.3f}\n", r.id, id_w,
                       r.group, group_w, p.volume, p.abundance, p.mattr, p.evenness, p.disparity, p.dispersion);
  }
  return out;
}

std::vector<ProfiledText> parse(std::string_view content, std::string_view source) {
  std::size_t i = 0;
  while (i < content.size() && std::isspace(static_cast<unsigned char>(content[i]))) ++i;
  if (i < content.size() && content[i] == '[') return parse_json(content, source);
  return parse_csv(content, source);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<ProfiledText> read_file(const std::filesystem::path& path) {
  return parse(read_text_file(path), path.string());
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace lexidiv::profile_io
