#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "collabrec/corpus/profile.hpp"

namespace collabrec::corpus {

/// A single tabular record: column name to raw cell text.
using Record = std::map<std::string, std::string>;

struct IngestDiagnostic {
  std::size_t record = 0;  // 1-based position in the source
  std::string message;
};

struct IngestResult {
  std::vector<Profile> profiles;
  std::vector<IngestDiagnostic> rejected;

  bool ok() const noexcept { return rejected.empty(); }
};

/// Validates records into profiles. Records without an "id" column get
/// "r<index>" identifiers. Invalid records are skipped and reported.
IngestResult load_profiles(std::span<const Record> records);

/// RFC 4180 CSV with a header row. Quoted cells may contain commas,
/// doubled quotes and newlines.
std::vector<Record> read_csv_records(std::istream& in);

/// One JSON object per line; blank lines are ignored. Non-string scalars are
/// stored in their JSON text form.
std::vector<Record> read_jsonl_records(std::istream& in);

/// Dispatches on extension: .csv, otherwise JSON-lines.
IngestResult load_profiles_file(const std::filesystem::path& path);

/// Like load_profiles_file but throws a validation Error listing every
/// rejected record.
std::vector<Profile> load_profiles_strict(const std::filesystem::path& path);

void write_profiles_jsonl(std::ostream& out, std::span<const Profile> profiles);
void write_profiles_csv(std::ostream& out, std::span<const Profile> profiles);

}  // namespace collabrec::corpus
