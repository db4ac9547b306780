#ifndef RULEFST_FEATURES_H_
#define RULEFST_FEATURES_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rulefst/regex.h"
#include "rulefst/symbols.h"

namespace rulefst {

struct RuleFile;

// A feature structure: an ordered, partial map from feature to value.
class Item {
 public:
  Item() = default;
  Item(std::initializer_list<std::pair<std::string, std::string>> features);

  std::optional<std::string> Get(std::string_view feature) const;
  // Overwrites in place, or appends a new feature.
  void Set(std::string_view feature, std::string_view value);

  const std::vector<std::pair<std::string, std::string>> &features() const {
    return features_;
  }
  bool empty() const { return features_.empty(); }

  bool operator==(const Item &other) const = default;

 private:
  std::vector<std::pair<std::string, std::string>> features_;
};

// Per-feature value constraints, e.g. [pos=nn|nnp case=u].  Features not
// mentioned are unconstrained.
struct ItemDescription {
  std::map<std::string, std::set<std::string>> constraints;

  bool operator==(const ItemDescription &other) const = default;
};

// Features set on one output item, e.g. [sense=2].  Sorted by feature.
struct AssignmentBundle {
  std::vector<std::pair<std::string, std::string>> assignments;

  // "[f=v,g=w]" or "[]"; used as the output symbol name.
  std::string SymbolName() const;
  bool operator==(const AssignmentBundle &other) const = default;
  bool operator<(const AssignmentBundle &other) const {
    return assignments < other.assignments;
  }
};

// Builds a bundle from an item description whose constraints are single
// values.  Throws CompileError otherwise.
AssignmentBundle BundleFromDescription(const ItemDescription &description);

struct FeatureInfo {
  std::string name;
  std::vector<std::string> values;     // sorted
  std::vector<SymbolId> value_ids;     // parallel to `values`
  SymbolId unseen = kEpsilon;          // this feature's '#'

  bool operator==(const FeatureInfo &other) const = default;
};

// The finite alphabet for item sequences: features f_1..f_K in name order,
// the values seen for each in the rules, and one unseen-value symbol per
// feature.  Value symbols are named "feature=value" and "feature=#".
class FeatureSchema {
 public:
  FeatureSchema() = default;

  // Interns value symbols (as input symbols) into `symbols`.
  static FeatureSchema Create(
      const std::map<std::string, std::set<std::string>> &seen,
      SymbolTable &symbols);
  // Rebuilds from already interned symbols (deserialization).
  static FeatureSchema FromInfo(std::vector<FeatureInfo> features);

  std::size_t size() const { return features_.size(); }
  const FeatureInfo &feature(std::size_t i) const { return features_.at(i); }
  const std::vector<FeatureInfo> &features() const { return features_; }
  std::optional<std::size_t> IndexOf(std::string_view name) const;
  std::optional<SymbolId> ValueSymbol(std::size_t feature,
                                      std::string_view value) const;
  // Sigma_i and '#_i' of every feature.
  std::vector<SymbolId> Alphabet() const;

  bool operator==(const FeatureSchema &other) const = default;

 private:
  std::vector<FeatureInfo> features_;
};

// Collects the features and values mentioned in the contexts and foci of
// `rules`.  Right-hand sides do not contribute.  Throws CompileError when no
// feature is mentioned.
FeatureSchema BuildSchema(const RuleFile &rules, SymbolTable &symbols);

// (v_1 .. v_K): the item's value for f_i if it was seen in the rules, else #_i.
std::vector<SymbolId> EncodeItem(const FeatureSchema &schema, const Item &item);

// Concatenation over features of the allowed value class; unconstrained
// features allow every value plus '#'.  Throws CompileError for unknown
// features or values.
Regex ExpandItemDescription(const FeatureSchema &schema,
                            const ItemDescription &description);

}  // namespace rulefst

#endif  // RULEFST_FEATURES_H_
