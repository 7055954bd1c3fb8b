#include "premsel/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace premsel {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::vector<std::pair<std::string, std::size_t>> split_words(std::string_view line) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.emplace_back(std::string(line.substr(i, j - i)), i + 1);
    i = j;
  }
  return out;
}

}  // namespace

DependencyList parse_dependencies(std::string_view text) {
  DependencyList out;
  std::unordered_set<std::string> seen;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++lineno;
    start = end + 1;
    if (auto pct = line.find('%'); pct != std::string_view::npos)
      line = line.substr(0, pct);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (std::all_of(line.begin(), line.end(), is_space)) continue;

    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("expected '<id>: <id> ...'", lineno, 1);
    auto head = split_words(line.substr(0, colon));
    if (head.size() != 1)
      throw ParseError("expected exactly one identifier before ':'", lineno, 1);
    std::string id = head[0].first;
    if (!seen.insert(id).second)
      throw ParseError("duplicate dependency line for '" + id + "'", lineno,
                       head[0].second);
    std::vector<std::string> deps;
    std::unordered_set<std::string> local;
    for (auto& [word, col] : split_words(line.substr(colon + 1))) {
      if (local.insert(word).second) deps.push_back(std::move(word));
    }
    out.emplace_back(std::move(id), std::move(deps));
    if (end == text.size()) break;
  }
  return out;
}

ProofMatrix::ProofMatrix(std::vector<std::vector<std::size_t>> rows)
    : rows_(std::move(rows)) {
  for (auto& r : rows_) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
}

bool ProofMatrix::operator()(std::size_t conjecture, std::size_t premise) const {
  if (conjecture >= rows_.size()) return false;
  const auto& r = rows_[conjecture];
  return std::binary_search(r.begin(), r.end(), premise);
}

std::size_t ProofMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

bool is_theorem_like(Role role) {
  return role == Role::Theorem || role == Role::Conjecture;
}

TrainingView::TrainingView(const Corpus& corpus, std::size_t end,
                           bool with_conjecture)
    : corpus_(&corpus),
      end_(end),
      with_conjecture_(with_conjecture),
      known_features_(corpus.features_known_before(end)) {}

std::size_t TrainingView::conjecture_position() const {
  if (!with_conjecture_) throw std::logic_error("training view has no conjecture");
  return end_;
}

const CorpusEntry& TrainingView::conjecture() const {
  return corpus_->entry(conjecture_position());
}

const CorpusEntry& TrainingView::entry(std::size_t position) const {
  if (position >= end_)
    throw std::out_of_range("position " + std::to_string(position) +
                            " is outside the training pool");
  return corpus_->entry(position);
}

std::vector<std::size_t> TrainingView::training_rows(RowPolicy policy) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < end_; ++i) {
    if (policy == RowPolicy::AllItems || is_theorem_like(corpus_->entry(i).item.role))
      rows.push_back(i);
  }
  return rows;
}

bool TrainingView::used(std::size_t row, std::size_t premise) const {
  if (row >= end_ || premise >= end_) return false;
  return corpus_->proof_matrix()(row, premise);
}

FeatureVector TrainingView::conjecture_features() const {
  return conjecture().features.truncated(known_features_);
}

Corpus Corpus::build(std::vector<NamedItem> items, const DependencyList& deps) {
  Corpus c = build_unfeatured(std::move(items), deps);
  c.known_prefix_.reserve(c.entries_.size() + 1);
  c.known_prefix_.push_back(0);
  for (auto& e : c.entries_) {
    e.features = vectorize(e.item.formula, c.dict_, true);
    c.known_prefix_.push_back(c.dict_.size());
  }
  return c;
}

Corpus Corpus::build(std::vector<NamedItem> items, const DependencyList& deps,
                     std::vector<FeatureVector> features, FeatureDictionary dict) {
  if (features.size() != items.size())
    throw CorpusError("feature vector count does not match item count");
  Corpus c = build_unfeatured(std::move(items), deps);
  c.dict_ = std::move(dict);
  c.known_prefix_.reserve(c.entries_.size() + 1);
  c.known_prefix_.push_back(0);
  for (std::size_t i = 0; i < c.entries_.size(); ++i) {
    auto& fv = features[i];
    std::size_t known = c.known_prefix_.back();
    if (!fv.empty()) {
      if (fv.indices().back() >= c.dict_.size())
        throw CorpusError("feature index out of dictionary range");
      known = std::max<std::size_t>(known, fv.indices().back() + 1);
    }
    c.entries_[i].features = std::move(fv);
    c.known_prefix_.push_back(known);
  }
  return c;
}

Corpus Corpus::build_unfeatured(std::vector<NamedItem> items, const DependencyList& deps) {
  Corpus c;
  c.entries_.reserve(items.size());
  for (auto& item : items) {
    if (item.id.empty()) throw CorpusError("item with empty identifier");
    if (std::any_of(item.id.begin(), item.id.end(), is_space))
      throw CorpusError("identifier '" + item.id + "' contains whitespace");
    auto pos = c.entries_.size();
    if (!c.index_.emplace(item.id, pos).second)
      throw CorpusError("duplicate item identifier '" + item.id + "'");
    c.entries_.push_back(CorpusEntry{std::move(item), {}, {}});
  }

  std::vector<std::vector<std::size_t>> rows(c.entries_.size());
  for (const auto& [id, used] : deps) {
    auto it = c.index_.find(id);
    if (it == c.index_.end())
      throw CorpusError("dependency line for unknown identifier '" + id + "'");
    std::size_t cpos = it->second;
    for (const auto& dep : used) {
      auto jt = c.index_.find(dep);
      if (jt == c.index_.end())
        throw CorpusError("'" + id + "' depends on unknown identifier '" + dep + "'");
      if (jt->second == cpos)
        throw CorpusError("'" + id + "' depends on itself");
      if (jt->second > cpos)
        throw CorpusError("chronology violation: '" + id + "' (position " +
                          std::to_string(cpos) + ") depends on later item '" +
                          dep + "' (position " + std::to_string(jt->second) + ")");
      rows[cpos].push_back(jt->second);
    }
  }
  c.mu_ = ProofMatrix(std::move(rows));
  for (std::size_t p = 0; p < c.entries_.size(); ++p) {
    auto& e = c.entries_[p];
    for (auto q : c.mu_.used(p)) e.dependencies.push_back(c.entries_[q].item.id);
  }
  return c;
}

std::optional<std::size_t> Corpus::position(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Corpus::features_known_before(std::size_t position) const {
  if (known_prefix_.empty()) return 0;
  return known_prefix_.at(std::min(position, entries_.size()));
}

TrainingView Corpus::training_view(std::size_t i) const {
  if (i >= entries_.size())
    throw std::out_of_range("training view position " + std::to_string(i) +
                            " out of range for corpus of size " +
                            std::to_string(entries_.size()));
  return TrainingView(*this, i, true);
}

TrainingView Corpus::full_view() const { return TrainingView(*this, entries_.size(), false); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Corpus load_corpus(std::span<const std::filesystem::path> formula_files,
                   const std::optional<std::filesystem::path>& dependency_file) {
  std::vector<NamedItem> items;
  std::unordered_set<std::string> seen;
  for (const auto& path : formula_files) {
    std::vector<NamedItem> parsed;
    try {
      parsed = parse_items(read_file(path));
    } catch (const ParseError& e) {
      throw e.in_source(path.string());
    }
    for (auto& item : parsed) {
      if (!seen.insert(item.id).second)
        throw CorpusError(path.string() + ": duplicate item identifier '" +
                          item.id + "'");
      items.push_back(std::move(item));
    }
  }
  DependencyList deps;
  if (dependency_file) {
    try {
      deps = parse_dependencies(read_file(*dependency_file));
    } catch (const ParseError& e) {
      throw e.in_source(dependency_file->string());
    }
  }
  return Corpus::build(std::move(items), deps);
}

}  // namespace premsel
