#include "premsel/features.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace premsel {

std::int64_t FeatureDictionary::find(std::string_view key) const {
  auto it = index_.find(std::string(key));
  return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

FeatureIndex FeatureDictionary::intern(const std::string& key) {
  auto [it, inserted] =
      index_.try_emplace(key, static_cast<FeatureIndex>(keys_.size()));
  if (inserted) keys_.push_back(key);
  return it->second;
}

std::uint64_t FeatureDictionary::fingerprint() const {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ULL;
  };
  for (const auto& k : keys_) {
    for (char c : k) mix(static_cast<unsigned char>(c));
    mix('\n');
  }
  return h;
}

void FeatureDictionary::save(std::ostream& out) const {
  for (const auto& k : keys_) out << k << '\n';
}

FeatureDictionary FeatureDictionary::load(std::istream& in) {
  FeatureDictionary dict;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      throw std::runtime_error("feature dictionary line " +
                               std::to_string(lineno) + ": empty key");
    if (dict.find(line) >= 0)
      throw std::runtime_error("feature dictionary line " +
                               std::to_string(lineno) + ": duplicate key '" +
                               line + "'");
    dict.intern(line);
  }
  return dict;
}

FeatureVector::FeatureVector(std::vector<FeatureIndex> indices)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool FeatureVector::contains(FeatureIndex i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

FeatureVector FeatureVector::truncated(std::size_t limit) const {
  FeatureVector out;
  auto end = std::lower_bound(indices_.begin(), indices_.end(), limit);
  out.indices_.assign(indices_.begin(), end);
  return out;
}

namespace {

void canonical_term_to(std::string& out, const Term& t) {
  if (t.is_variable()) {
    out += '*';
    out += std::to_string(t.index);
    return;
  }
  out += t.symbol;
  if (!t.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ',';
      canonical_term_to(out, t.args[i]);
    }
    out += ')';
  }
}

std::string symbol_key(std::string_view name, std::size_t arity) {
  std::string key = "s:";
  key += name;
  key += '/';
  key += std::to_string(arity);
  return key;
}

// Returns the canonical string of `t` so parents can reuse it.
std::string collect_term(const Term& t, std::set<std::string>& keys) {
  std::string text;
  if (t.is_variable()) {
    text = "*" + std::to_string(t.index);
  } else {
    keys.insert(symbol_key(t.symbol, t.arity()));
    text = t.symbol;
    if (!t.args.empty()) {
      text += '(';
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) text += ',';
        text += collect_term(t.args[i], keys);
      }
      text += ')';
    }
  }
  keys.insert("t:" + text);
  return text;
}

void collect_formula(const Formula& f, std::set<std::string>& keys) {
  switch (f.kind) {
    case FormulaKind::Atom:
      keys.insert(symbol_key(f.predicate, f.args.size()));
      for (const auto& a : f.args) collect_term(a, keys);
      return;
    case FormulaKind::Equality:
      keys.insert(symbol_key("=", 2));
      for (const auto& a : f.args) collect_term(a, keys);
      return;
    default:
      for (const auto& c : f.children) collect_formula(c, keys);
  }
}

}  // namespace

std::string canonical_term(const Term& term) {
  std::string out;
  canonical_term_to(out, term);
  return out;
}

std::set<std::string> extract_features(const Formula& formula) {
  std::set<std::string> keys;
  collect_formula(formula, keys);
  return keys;
}

FeatureVector vectorize(const Formula& formula, FeatureDictionary& dict,
                        bool extend) {
  if (!extend) return vectorize(formula, std::as_const(dict));
  std::vector<FeatureIndex> idx;
  for (const auto& key : extract_features(formula)) idx.push_back(dict.intern(key));
  return FeatureVector(std::move(idx));
}

FeatureVector vectorize(const Formula& formula, const FeatureDictionary& dict) {
  std::vector<FeatureIndex> idx;
  for (const auto& key : extract_features(formula)) {
    auto i = dict.find(key);
    if (i >= 0) idx.push_back(static_cast<FeatureIndex>(i));
  }
  return FeatureVector(std::move(idx));
}

std::size_t dot(const FeatureVector& a, const FeatureVector& b) {
  auto x = a.indices();
  auto y = b.indices();
  std::size_t i = 0, j = 0, n = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] < y[j]) ++i;
    else if (y[j] < x[i]) ++j;
    else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

}  // namespace premsel
