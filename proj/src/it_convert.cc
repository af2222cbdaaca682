#include "unidive/it_convert.h"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace unidive {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string RenderRows(const Sentence& sentence, bool gold) {
  std::string out;
  for (const Token& t : sentence.tokens) {
    out += std::to_string(t.id);
    out += '\t';
    out += t.form;
    out += '\t';
    out += t.LemmaColumn();
    out += '\t';
    out += ToString(t.upos);
    out += '\t';
    out += t.XposColumn();
    out += '\t';
    out += t.feats.ToString();
    out += '\t';
    if (gold) {
      out += std::to_string(t.head);
      out += '\t';
      out += t.deprel;
    } else {
      out += kHeadPlaceholder;
      out += '\t';
      out += kRelPlaceholder;
    }
    out += '\n';
  }
  return out;
}

std::optional<int> ParseNonNegative(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<ParsedRow> ParseRow(std::string_view line) {
  std::vector<std::string_view> fields = Split(line, '\t');
  if (fields.size() < 8) fields = SplitWhitespace(line);
  if (fields.empty()) return std::nullopt;
  const std::optional<int> id = ParseNonNegative(Trim(fields[0]));
  if (!id || *id == 0) return std::nullopt;
  ParsedRow row;
  row.id = *id;
  if (fields.size() > 6) row.head = ParseNonNegative(Trim(fields[6]));
  if (fields.size() > 7) {
    const std::string_view rel = Trim(fields[7]);
    const bool blank = rel.empty() || rel == "_" || rel == kRelPlaceholder;
    if (!blank && SplitWhitespace(rel).size() == 1) row.deprel = std::string(rel);
  }
  return row;
}

std::string GetString(const ordered_json& object, const char* key, std::size_t line) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_string()) {
    throw FormatError(line, std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

std::size_t CodePointLength(std::string_view utf8) {
  std::size_t n = 0;
  for (unsigned char c : utf8) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string ConcatenatedText(const ITRecord& record) {
  return record.instruction + "\n" + record.input + "\n" + record.output;
}

ITRecord ToItRecord(const Sentence& sentence, std::string_view instruction) {
  if (sentence.tokens.empty()) {
    throw std::invalid_argument("cannot convert a sentence without tokens");
  }
  ITRecord r;
  r.instruction = std::string(instruction);
  r.input = RenderRows(sentence, /*gold=*/false);
  r.output = RenderRows(sentence, /*gold=*/true);
  r.output_offset = CodePointLength(r.instruction) + 1 + CodePointLength(r.input) + 1;
  return r;
}

std::vector<ParsedRow> FromItOutput(std::string_view output_text) {
  std::vector<ParsedRow> rows;
  std::size_t start = 0;
  while (start <= output_text.size()) {
    std::size_t end = output_text.find('\n', start);
    if (end == std::string_view::npos) end = output_text.size();
    std::string_view line = output_text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (std::optional<ParsedRow> row = ParseRow(line)) rows.push_back(std::move(*row));
    start = end + 1;
  }
  return rows;
}

std::size_t EmitJsonl(std::span<const ITRecord> records, std::ostream& sink) {
  std::size_t n = 0;
  for (const ITRecord& r : records) {
    ordered_json object;
    object["instruction"] = r.instruction;
    object["input"] = r.input;
    object["output"] = r.output;
    object["output_offset"] = r.output_offset;
    sink << object.dump() << '\n';
    if (!sink) throw std::runtime_error("failed to write JSONL record");
    ++n;
  }
  return n;
}

std::vector<ITRecord> ReadJsonl(std::istream& in) {
  std::vector<ITRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    ordered_json object = ordered_json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (!object.is_object()) throw FormatError(number, "not a JSON object");
    ITRecord r;
    r.instruction = GetString(object, "instruction", number);
    r.input = GetString(object, "input", number);
    r.output = GetString(object, "output", number);
    auto offset = object.find("output_offset");
    if (offset == object.end() || !offset->is_number_unsigned()) {
      throw FormatError(number, "missing unsigned field 'output_offset'");
    }
    r.output_offset = offset->get<std::size_t>();
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<std::vector<ParsedRow>> ReadPredictions(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::vector<std::vector<ParsedRow>> out;

  const std::string_view head = Trim(text);
  if (!head.empty() && head.front() == '{') {
    std::istringstream lines(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(lines, line)) {
      ++number;
      if (Trim(line).empty()) continue;
      ordered_json object = ordered_json::parse(line, nullptr, false);
      if (!object.is_object()) throw FormatError(number, "not a JSON object");
      std::string generated;
      if (object.contains("output") && object["output"].is_string()) {
        generated = object["output"].get<std::string>();
      } else if (object.contains("prediction") && object["prediction"].is_string()) {
        generated = object["prediction"].get<std::string>();
      } else {
        throw FormatError(number, "object has no 'output' or 'prediction' string");
      }
      out.push_back(FromItOutput(generated));
    }
    return out;
  }

  std::string block;
  auto flush = [&] {
    if (!block.empty()) out.push_back(FromItOutput(block));
    block.clear();
  };
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (Trim(line).empty()) {
      flush();
    } else {
      block += line;
      block += '\n';
    }
  }
  flush();
  return out;
}

}  // namespace unidive
