#ifndef UNIDIVE_FEATURE_BAG_H_
#define UNIDIVE_FEATURE_BAG_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace unidive {

// Case-insensitive ordering with a byte-wise tie break, so the order is total.
struct FeatureNameLess {
  bool operator()(std::string_view a, std::string_view b) const;
  using is_transparent = void;
};

// A FEATS column: feature keys mapped to sorted, de-duplicated value sets.
//
// The string form lists keys in case-insensitive order separated by `|`,
// values of one key joined by `,`, and an empty bag is `_`.
class FeatureBag {
 public:
  using Values = std::vector<std::string>;
  using Map = std::map<std::string, Values, FeatureNameLess>;

  FeatureBag() = default;

  // Parses a FEATS column. Throws std::invalid_argument on bad syntax.
  // Non-canonical ordering is accepted and normalized; `canonical`, when
  // given, reports whether the input was already in canonical form.
  static FeatureBag Parse(std::string_view text, bool* canonical = nullptr);

  static bool IsValidKey(std::string_view key);
  static bool IsValidValue(std::string_view value);

  // Adds one value to a key, keeping the value set sorted.
  void Add(std::string_view key, std::string_view value);
  // Replaces all values of `key` with `value`.
  void Set(std::string_view key, std::string_view value);
  bool Erase(std::string_view key);

  bool Contains(std::string_view key) const;
  bool Contains(std::string_view key, std::string_view value) const;
  const Values* Find(std::string_view key) const;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const Map& entries() const { return entries_; }

  std::string ToString() const;

  friend bool operator==(const FeatureBag&, const FeatureBag&) = default;

 private:
  Map entries_;
};

}  // namespace unidive

#endif  // UNIDIVE_FEATURE_BAG_H_
