// Dataset ingestion: JSONL and plain text-block formats, field-name
// adapters, sentence splitting and fact/rule segregation.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "logictree/statement.hpp"

namespace logictree {

struct DatasetRecord {
  std::string id;
  std::vector<std::string> premises;  // facts and rules, possibly unsegregated
  std::string hypothesis;
  std::optional<Label> gold;
};

enum class DatasetFormat { jsonl, text_block };

struct LoadIssue {
  std::size_t line = 0;  // 1-based line in the source file
  std::string message;
};

struct LoadedDataset {
  std::vector<DatasetRecord> records;
  std::vector<LoadIssue> issues;  // skipped lines in lenient mode
};

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Strict mode turns the first issue into a DatasetError.
LoadedDataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                           bool strict);

// "A. B. C." -> {"A.", "B.", "C."}
std::vector<std::string> split_sentences(std::string_view text);

struct BuiltProblem {
  Problem problem;
  std::vector<LoadIssue> skipped;  // unparseable premise sentences (lenient mode)
};

// Classify each premise sentence as rule or fact and parse it; lenient mode
// skips and reports unparseable sentences, strict mode throws ParseError.
BuiltProblem build_problem(const DatasetRecord& record, bool strict);

}  // namespace logictree
