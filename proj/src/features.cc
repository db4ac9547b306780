#include "rulefst/features.h"

#include <algorithm>

#include "rulefst/error.h"
#include "rulefst/rule_file.h"

namespace rulefst {

Item::Item(std::initializer_list<std::pair<std::string, std::string>> features) {
  for (const auto &[f, v] : features) Set(f, v);
}

std::optional<std::string> Item::Get(std::string_view feature) const {
  for (const auto &[f, v] : features_) {
    if (f == feature) return v;
  }
  return std::nullopt;
}

void Item::Set(std::string_view feature, std::string_view value) {
  for (auto &[f, v] : features_) {
    if (f == feature) {
      v = value;
      return;
    }
  }
  features_.emplace_back(feature, value);
}

std::string AssignmentBundle::SymbolName() const {
  std::string out = "[";
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (i) out += ',';
    out += assignments[i].first + "=" + assignments[i].second;
  }
  return out + "]";
}

AssignmentBundle BundleFromDescription(const ItemDescription &description) {
  AssignmentBundle bundle;
  for (const auto &[feature, values] : description.constraints) {
    if (values.size() != 1) {
      throw CompileError("right-hand side sets feature '" + feature +
                         "' to more than one value");
    }
    bundle.assignments.emplace_back(feature, *values.begin());
  }
  return bundle;
}

FeatureSchema FeatureSchema::Create(
    const std::map<std::string, std::set<std::string>> &seen,
    SymbolTable &symbols) {
  FeatureSchema schema;
  for (const auto &[name, values] : seen) {
    FeatureInfo info;
    info.name = name;
    for (const auto &value : values) {
      info.values.push_back(value);
      info.value_ids.push_back(symbols.Add(name + "=" + value, kInputSymbol));
    }
    info.unseen = symbols.Add(name + "=#", kInputSymbol);
    schema.features_.push_back(std::move(info));
  }
  return schema;
}

FeatureSchema FeatureSchema::FromInfo(std::vector<FeatureInfo> features) {
  FeatureSchema schema;
  schema.features_ = std::move(features);
  return schema;
}

std::optional<std::size_t> FeatureSchema::IndexOf(std::string_view name) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<SymbolId> FeatureSchema::ValueSymbol(std::size_t feature,
                                                   std::string_view value) const {
  const FeatureInfo &info = features_.at(feature);
  auto it = std::lower_bound(info.values.begin(), info.values.end(), value);
  if (it == info.values.end() || *it != value) return std::nullopt;
  return info.value_ids[static_cast<std::size_t>(it - info.values.begin())];
}

std::vector<SymbolId> FeatureSchema::Alphabet() const {
  std::vector<SymbolId> out;
  for (const FeatureInfo &info : features_) {
    out.insert(out.end(), info.value_ids.begin(), info.value_ids.end());
    out.push_back(info.unseen);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void CollectFeatures(const Pattern &pattern,
                     std::map<std::string, std::set<std::string>> &seen) {
  if (pattern.kind == Pattern::Kind::kItem) {
    for (const auto &[feature, values] : pattern.item.constraints) {
      seen[feature].insert(values.begin(), values.end());
    }
  }
  for (const Pattern &child : pattern.children) CollectFeatures(child, seen);
}

}  // namespace

FeatureSchema BuildSchema(const RuleFile &rules, SymbolTable &symbols) {
  std::map<std::string, std::set<std::string>> seen;
  for (const RuleText &rule : rules.rules) {
    CollectFeatures(rule.left, seen);
    CollectFeatures(rule.focus, seen);
    CollectFeatures(rule.right, seen);
  }
  if (seen.empty()) {
    throw CompileError("item mode rules mention no features");
  }
  return FeatureSchema::Create(seen, symbols);
}

std::vector<SymbolId> EncodeItem(const FeatureSchema &schema, const Item &item) {
  std::vector<SymbolId> out;
  out.reserve(schema.size());
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const FeatureInfo &info = schema.feature(i);
    std::optional<SymbolId> id;
    if (auto value = item.Get(info.name)) id = schema.ValueSymbol(i, *value);
    out.push_back(id ? *id : info.unseen);
  }
  return out;
}

Regex ExpandItemDescription(const FeatureSchema &schema,
                            const ItemDescription &description) {
  for (const auto &[feature, values] : description.constraints) {
    auto index = schema.IndexOf(feature);
    if (!index) throw CompileError("unknown feature '" + feature + "'");
    for (const auto &value : values) {
      if (!schema.ValueSymbol(*index, value)) {
        throw CompileError("unknown value '" + value + "' for feature '" +
                           feature + "'");
      }
    }
  }
  std::vector<Regex> leaves;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    const FeatureInfo &info = schema.feature(i);
    std::vector<SymbolId> allowed;
    std::string label = info.name + "=";
    auto it = description.constraints.find(info.name);
    if (it == description.constraints.end()) {
      allowed = info.value_ids;
      allowed.push_back(info.unseen);
      label += "*";
    } else {
      for (const auto &value : it->second) {
        allowed.push_back(*schema.ValueSymbol(i, value));
        if (label.back() != '=') label += "|";
        label += value;
      }
    }
    leaves.push_back(Regex::Leaf(std::move(allowed), std::move(label)));
  }
  return Regex::Concat(std::move(leaves));
}

}  // namespace rulefst
