#include "collabrec/corpus/ingest.hpp"

#include <charconv>
#include <optional>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "collabrec/error.hpp"

namespace collabrec::corpus {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_number(std::string_view text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, value);
  if (ec != std::errc{} || ptr != end || t.empty()) return std::nullopt;
  return value;
}

bool parse_bool(std::string_view text) {
  const std::string t = trim(text);
  return t == "true" || t == "1" || t == "True" || t == "TRUE";
}

std::string padded_id(char prefix, std::size_t index) {
  std::string digits = std::to_string(index);
  if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
  return prefix + digits;
}

std::string csv_escape(std::string_view cell) {
  if (cell.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(cell);
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

IngestResult load_profiles(std::span<const Record> records) {
  IngestResult result;
  std::set<std::string> emails;
  std::set<std::string> ids;

  for (std::size_t i = 0; i < records.size(); ++i) {
    const Record& rec = records[i];
    const std::size_t position = i + 1;
    auto reject = [&](std::string message) {
      result.rejected.push_back({position, "record " + std::to_string(position) + ": " + message});
    };

    std::string missing;
    for (auto field : kProfileFields) {
      if (!rec.contains(std::string(field))) {
        missing += missing.empty() ? "" : ", ";
        missing += field;
      }
    }
    if (!missing.empty()) {
      reject("missing field(s) " + missing);
      continue;
    }

    Profile p;
    auto id_it = rec.find("id");
    p.id = (id_it != rec.end() && !trim(id_it->second).empty()) ? trim(id_it->second)
                                                                : padded_id('r', position);
    p.name = trim(rec.at("name"));
    p.email = trim(rec.at("email"));
    p.profession = trim(rec.at("profession"));
    p.interest = trim(rec.at("interest"));
    p.collaboration_with = trim(rec.at("collaboration_with"));
    p.domain = trim(rec.at("domain"));
    p.skillset = trim(rec.at("skillset"));
    if (auto syn = rec.find("is_synthetic"); syn != rec.end()) p.is_synthetic = parse_bool(syn->second);

    auto experience = parse_number(rec.at("experience"));
    if (!experience) {
      reject("experience is not a number: '" + rec.at("experience") + "'");
      continue;
    }
    p.experience = *experience;

    try {
      validate(p);
    } catch (const Error& e) {
      reject(e.what());
      continue;
    }
    if (!emails.insert(p.email).second) {
      reject("duplicate email " + p.email);
      continue;
    }
    if (!ids.insert(p.id).second) {
      reject("duplicate id " + p.id);
      continue;
    }
    result.profiles.push_back(std::move(p));
  }
  return result;
}

std::vector<Record> read_csv_records(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool any = false;
  char c;
  auto end_row = [&] {
    row.push_back(std::move(cell));
    cell.clear();
    bool empty_line = row.size() == 1 && row[0].empty() && !any;
    if (!empty_line) rows.push_back(std::move(row));
    row.clear();
    any = false;
  };
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          cell += '"';
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        any = true;
        break;
      case ',':
        row.push_back(std::move(cell));
        cell.clear();
        any = true;
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        cell += c;
        any = true;
    }
  }
  if (quoted) throw validation_error("csv: unterminated quoted cell");
  if (any || !cell.empty() || !row.empty()) end_row();
  if (rows.empty()) return {};

  std::vector<std::string> header = rows.front();
  for (auto& h : header) h = trim(h);
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);

  std::vector<Record> records;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() > header.size()) {
      throw validation_error("csv: row " + std::to_string(r) + " has more cells than the header");
    }
    Record rec;
    for (std::size_t c2 = 0; c2 < rows[r].size(); ++c2) rec[header[c2]] = rows[r][c2];
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<Record> read_jsonl_records(std::istream& in) {
  std::vector<Record> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw validation_error("jsonl: line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object()) throw validation_error("jsonl: line " + std::to_string(line_no) + " is not an object");
    Record rec;
    for (auto& [key, value] : j.items()) {
      if (value.is_null()) continue;
      rec[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
    records.push_back(std::move(rec));
  }
  return records;
}

IngestResult load_profiles_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open profile file " + path.string());
  const auto records = path.extension() == ".csv" ? read_csv_records(in) : read_jsonl_records(in);
  return load_profiles(records);
}

std::vector<Profile> load_profiles_strict(const std::filesystem::path& path) {
  auto result = load_profiles_file(path);
  if (!result.ok()) {
    std::ostringstream msg;
    msg << path.string() << ": " << result.rejected.size() << " invalid record(s)";
    for (const auto& d : result.rejected) msg << "\n  " << d.message;
    throw validation_error(msg.str());
  }
  return std::move(result.profiles);
}

void write_profiles_jsonl(std::ostream& out, std::span<const Profile> profiles) {
  for (const auto& p : profiles) out << nlohmann::json(p).dump() << '\n';
}

void write_profiles_csv(std::ostream& out, std::span<const Profile> profiles) {
  out << "id";
  for (auto field : kProfileFields) out << ',' << field;
  out << ",is_synthetic\n";
  for (const auto& p : profiles) {
    std::ostringstream exp;
    exp << p.experience;
    out << csv_escape(p.id) << ',' << csv_escape(p.name) << ',' << csv_escape(p.email) << ','
        << csv_escape(p.profession) << ',' << exp.str() << ',' << csv_escape(p.interest) << ','
        << csv_escape(p.collaboration_with) << ',' << csv_escape(p.domain) << ','
        << csv_escape(p.skillset) << ',' << (p.is_synthetic ? "true" : "false") << '\n';
  }
}

}  // namespace collabrec::corpus
