#include "unidive/feature_bag.h"

#include <algorithm>
#include <stdexcept>

namespace unidive {
namespace {

char Lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool IsAlpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool IsDigit(char c) { return c >= '0' && c <= '9'; }

void InsertSorted(FeatureBag::Values& values, std::string_view value) {
  FeatureNameLess less;
  auto it = std::lower_bound(values.begin(), values.end(), value,
                             [&](const std::string& a, std::string_view b) {
                               return less(a, b);
                             });
  if (it != values.end() && *it == value) return;
  values.insert(it, std::string(value));
}

}  // namespace

bool FeatureNameLess::operator()(std::string_view a, std::string_view b) const {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const char la = Lower(a[i]);
    const char lb = Lower(b[i]);
    if (la != lb) return static_cast<unsigned char>(la) < static_cast<unsigned char>(lb);
  }
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool FeatureBag::IsValidKey(std::string_view key) {
  if (key.empty() || !IsAlpha(key[0])) return false;
  return std::all_of(key.begin() + 1, key.end(), [](char c) {
    return IsAlpha(c) || IsDigit(c) || c == '[' || c == ']';
  });
}

// Values may start with a digit (Person=1).
bool FeatureBag::IsValidValue(std::string_view value) {
  if (value.empty()) return false;
  return std::all_of(value.begin(), value.end(),
                     [](char c) { return IsAlpha(c) || IsDigit(c); });
}

FeatureBag FeatureBag::Parse(std::string_view text, bool* canonical) {
  FeatureBag bag;
  if (canonical != nullptr) *canonical = true;
  if (text == "_") return bag;
  if (text.empty()) throw std::invalid_argument("empty FEATS column");

  std::string previous_key;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t bar = text.find('|', start);
    if (bar == std::string_view::npos) bar = text.size();
    const std::string_view item = text.substr(start, bar - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("feature '" + std::string(item) +
                                  "' has no '='");
    }
    const std::string_view key = item.substr(0, eq);
    if (!IsValidKey(key)) {
      throw std::invalid_argument("invalid feature key '" + std::string(key) + "'");
    }
    if (bag.Contains(key)) {
      throw std::invalid_argument("duplicate feature key '" + std::string(key) + "'");
    }
    if (canonical != nullptr && !previous_key.empty() &&
        !FeatureNameLess()(previous_key, key)) {
      *canonical = false;
    }
    previous_key = std::string(key);

    std::string_view values = item.substr(eq + 1);
    std::string previous_value;
    std::size_t vstart = 0;
    while (vstart <= values.size()) {
      std::size_t comma = values.find(',', vstart);
      if (comma == std::string_view::npos) comma = values.size();
      const std::string_view value = values.substr(vstart, comma - vstart);
      if (!IsValidValue(value)) {
        throw std::invalid_argument("invalid value '" + std::string(value) +
                                    "' for feature '" + std::string(key) + "'");
      }
      if (canonical != nullptr && !previous_value.empty() &&
          !FeatureNameLess()(previous_value, value)) {
        *canonical = false;
      }
      previous_value = std::string(value);
      bag.Add(key, value);
      vstart = comma + 1;
    }
    start = bar + 1;
  }
  return bag;
}

void FeatureBag::Add(std::string_view key, std::string_view value) {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    it = entries_.emplace(std::string(key), Values{}).first;
  }
  InsertSorted(it->second, value);
}

void FeatureBag::Set(std::string_view key, std::string_view value) {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(std::string(key), Values{std::string(value)});
  } else {
    it->second.assign(1, std::string(value));
  }
}

bool FeatureBag::Erase(std::string_view key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return false;
  entries_.erase(it);
  return true;
}

bool FeatureBag::Contains(std::string_view key) const {
  return entries_.find(key) != entries_.end();
}

bool FeatureBag::Contains(std::string_view key, std::string_view value) const {
  const Values* values = Find(key);
  return values != nullptr &&
         std::find(values->begin(), values->end(), value) != values->end();
}

const FeatureBag::Values* FeatureBag::Find(std::string_view key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string FeatureBag::ToString() const {
  if (entries_.empty()) return "_";
  std::string out;
  for (const auto& [key, values] : entries_) {
    if (!out.empty()) out += '|';
    out += key;
    out += '=';
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out += ',';
      out += values[i];
    }
  }
  return out;
}

}  // namespace unidive
