#include "logictree/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "logictree/parse.hpp"

namespace logictree {

namespace {

using nlohmann::json;

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::optional<std::string> first_string(const json& j,
                                        std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    if (j.contains(key) && j[key].is_string()) return j[key].get<std::string>();
  }
  return std::nullopt;
}

std::optional<Label> read_label(const json& j) {
  for (const char* key : {"label", "answer", "gold", "gold_label"}) {
    if (!j.contains(key)) continue;
    const json& v = j[key];
    if (v.is_boolean()) return v.get<bool>() ? Label::True : Label::False;
    if (v.is_string()) return label_from_string(v.get<std::string>());
  }
  return std::nullopt;
}

std::vector<std::string> read_premises(const json& j) {
  for (const char* key : {"premises", "facts_and_rules", "context", "theory", "premise"}) {
    if (!j.contains(key)) continue;
    const json& v = j[key];
    if (v.is_array()) {
      std::vector<std::string> out;
      for (const json& item : v) {
        if (item.is_string()) {
          for (std::string& s : split_sentences(item.get<std::string>())) {
            out.push_back(std::move(s));
          }
        }
      }
      return out;
    }
    if (v.is_string()) return split_sentences(v.get<std::string>());
  }
  return {};
}

LoadedDataset load_jsonl(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset: " + path.string());
  LoadedDataset out;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trimmed(line).empty()) continue;
    json j = json::parse(line, nullptr, false);
    auto issue = [&](std::string message) {
      if (strict) throw DatasetError("line " + std::to_string(line_no) + ": " + message);
      out.issues.push_back(LoadIssue{line_no, std::move(message)});
    };
    if (j.is_discarded() || !j.is_object()) {
      issue("malformed json");
      continue;
    }
    DatasetRecord rec;
    rec.id = first_string(j, {"id", "example_id", "qid"})
                 .value_or("line" + std::to_string(line_no));
    rec.premises = read_premises(j);
    if (auto hyp = first_string(j, {"hypothesis", "question", "conclusion", "statement"})) {
      rec.hypothesis = *hyp;
    }
    rec.gold = read_label(j);
    if (rec.premises.empty()) {
      issue("record has no premises");
      continue;
    }
    if (rec.hypothesis.empty()) {
      issue("record has no hypothesis");
      continue;
    }
    if (!seen_ids.insert(rec.id).second) {
      issue("duplicate record id: " + rec.id);
      continue;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

// Blank-line separated blocks:
//   # optional-id
//   premise sentences (one or more lines)
//   Hypothesis: <sentence>
//   Label: True|False|Unknown   (optional)
LoadedDataset load_text_blocks(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset: " + path.string());
  LoadedDataset out;

  DatasetRecord rec;
  std::set<std::string> seen_ids;
  std::size_t block_line = 0;
  std::size_t line_no = 0;
  int block_index = 0;

  auto flush = [&]() {
    if (rec.premises.empty() && rec.hypothesis.empty()) {
      rec = DatasetRecord{};
      return;
    }
    ++block_index;
    if (rec.id.empty()) rec.id = "block" + std::to_string(block_index);
    auto issue = [&](std::string message) {
      if (strict) throw DatasetError(message);
      out.issues.push_back(LoadIssue{block_line, std::move(message)});
    };
    if (rec.hypothesis.empty()) {
      issue("block ending at line " + std::to_string(line_no) + " has no 'Hypothesis:' line");
    } else if (!seen_ids.insert(rec.id).second) {
      issue("duplicate record id: " + rec.id);
    } else {
      out.records.push_back(rec);
    }
    rec = DatasetRecord{};
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trimmed(line);
    if (body.empty()) {
      flush();
      continue;
    }
    if (rec.premises.empty() && rec.hypothesis.empty() && rec.id.empty()) block_line = line_no;
    if (body[0] == '#') {
      rec.id = trimmed(body.substr(1));
      continue;
    }
    if (body.rfind("Hypothesis:", 0) == 0) {
      rec.hypothesis = trimmed(body.substr(11));
      continue;
    }
    if (body.rfind("Label:", 0) == 0) {
      rec.gold = label_from_string(trimmed(body.substr(6)));
      continue;
    }
    for (std::string& s : split_sentences(body)) rec.premises.push_back(std::move(s));
  }
  flush();
  return out;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '.' && (i + 1 >= text.size() || text[i + 1] == ' ' || text[i + 1] == '\n' ||
                           text[i + 1] == '\t')) {
      std::string s = trimmed(text.substr(begin, i - begin + 1));
      if (s.size() > 1) out.push_back(std::move(s));
      begin = i + 1;
    }
  }
  std::string tail = trimmed(text.substr(begin));
  if (!tail.empty()) out.push_back(tail + ".");
  return out;
}

LoadedDataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                           bool strict) {
  return format == DatasetFormat::jsonl ? load_jsonl(path, strict)
                                        : load_text_blocks(path, strict);
}

BuiltProblem build_problem(const DatasetRecord& record, bool strict) {
  BuiltProblem out;
  for (std::size_t i = 0; i < record.premises.size(); ++i) {
    const std::string& sentence = record.premises[i];
    try {
      if (looks_like_rule(sentence)) {
        for (Rule& r : parse_rule(sentence)) out.problem.rules.push_back(std::move(r));
      } else {
        Statement fact = parse_statement(sentence);
        // Some releases repeat a given fact; one tree root per fact.
        auto& facts = out.problem.facts;
        if (std::find(facts.begin(), facts.end(), fact) == facts.end()) {
          facts.push_back(std::move(fact));
        }
      }
    } catch (const ParseError& e) {
      if (strict) throw;
      out.skipped.push_back(LoadIssue{i + 1, sentence + " -- " + e.reason()});
    }
  }
  out.problem.hypothesis = parse_statement(record.hypothesis);  // throws when unparseable
  out.problem.gold = record.gold;
  return out;
}

}  // namespace logictree
