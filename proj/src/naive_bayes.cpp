#include "premsel/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "premsel/text_io.hpp"

namespace premsel {

NbModel::NbModel(std::size_t rows, std::vector<std::uint32_t> feature_counts,
                 std::vector<Premise> premises, std::size_t dictionary_size,
                 std::uint64_t dictionary_fingerprint)
    : rows_(rows),
      feature_counts_(std::move(feature_counts)),
      premises_(std::move(premises)),
      dict_size_(dictionary_size),
      dict_fingerprint_(dictionary_fingerprint) {}

std::uint32_t NbModel::feature_count(FeatureIndex i) const {
  return i < feature_counts_.size() ? feature_counts_[i] : 0;
}

double NbModel::prior_log_odds(std::size_t k) const {
  const double uses = premises_.at(k).uses;
  const double rows = static_cast<double>(rows_);
  return std::log((uses + 1.0) / (rows + 2.0)) -
         std::log((rows - uses + 1.0) / (rows + 2.0));
}

double NbModel::weight_from_counts(std::size_t k, std::uint32_t co,
                                   std::uint32_t total) const {
  const double uses = premises_[k].uses;
  const double rows = static_cast<double>(rows_);
  const double pos = (co + 1.0) / (uses + 2.0);
  const double neg = (static_cast<double>(total - co) + 1.0) / (rows - uses + 2.0);
  return std::log(pos) - std::log(neg);
}

std::uint32_t NbModel::cooccurrence(std::size_t k, FeatureIndex i) const {
  const auto& co = premises_[k].cooccurrence;
  auto it = std::lower_bound(co.begin(), co.end(), i,
                             [](const auto& e, FeatureIndex f) { return e.first < f; });
  return it != co.end() && it->first == i ? it->second : 0;
}

double NbModel::weight(std::size_t k, FeatureIndex i) const {
  auto total = feature_count(i);
  if (total == 0) return 0.0;
  return weight_from_counts(k, cooccurrence(k, i), total);
}

std::vector<double> NbModel::score(const FeatureVector& conjecture) const {
  std::vector<FeatureIndex> trained;
  for (auto i : conjecture.indices())
    if (feature_count(i) > 0) trained.push_back(i);

  std::vector<double> out(premises_.size());
  for (std::size_t k = 0; k < premises_.size(); ++k) {
    double s = prior_log_odds(k);
    for (auto i : trained) s += weight_from_counts(k, cooccurrence(k, i), feature_counts_[i]);
    out[k] = s;
  }
  return out;
}

void NbModel::save(std::ostream& out) const {
  out << "premsel-nb 1\n";
  out << "rows " << rows_ << '\n';
  std::ostringstream fp;
  fp << std::hex << dict_fingerprint_;
  out << "dictionary " << dict_size_ << ' ' << fp.str() << '\n';
  std::size_t nz = 0;
  for (auto c : feature_counts_) nz += c > 0;
  out << "feature_counts " << feature_counts_.size() << ' ' << nz;
  for (std::size_t i = 0; i < feature_counts_.size(); ++i)
    if (feature_counts_[i] > 0) out << ' ' << i << ':' << feature_counts_[i];
  out << '\n';
  out << "premises " << premises_.size() << '\n';
  for (std::size_t k = 0; k < premises_.size(); ++k) {
    const auto& p = premises_[k];
    out << "premise " << p.id << ' ' << p.position << ' ' << p.uses << ' '
        << format_double(prior_log_odds(k)) << ' ' << p.cooccurrence.size();
    for (const auto& [f, c] : p.cooccurrence)
      out << ' ' << f << ':' << c << ':' << format_double(weight(k, f));
    out << '\n';
  }
}

NbModel NbModel::load(std::istream& in) {
  auto header = read_words(in, "header");
  if (header.size() != 2 || header[0] != "premsel-nb" || header[1] != "1")
    throw std::runtime_error("not a naive-Bayes model file");

  auto w = read_words(in, "rows");
  expect_words(w, "rows", 2);
  std::size_t rows = parse_integer<std::size_t>(w[1]);

  w = read_words(in, "dictionary");
  expect_words(w, "dictionary", 3);
  std::size_t dict_size = parse_integer<std::size_t>(w[1]);
  std::uint64_t fingerprint = parse_integer<std::uint64_t>(w[2], 16);

  w = read_words(in, "feature_counts");
  expect_words(w, "feature_counts", 3);
  std::vector<std::uint32_t> counts(parse_integer<std::size_t>(w[1]), 0);
  std::size_t nz = parse_integer<std::size_t>(w[2]);
  if (w.size() != 3 + nz) throw std::runtime_error("malformed feature_counts line");
  for (std::size_t j = 0; j < nz; ++j) {
    auto parts = split(w[3 + j], ':');
    if (parts.size() != 2) throw std::runtime_error("malformed feature count entry");
    auto f = parse_integer<std::size_t>(parts[0]);
    if (f >= counts.size()) throw std::runtime_error("feature count index out of range");
    counts[f] = parse_integer<std::uint32_t>(parts[1]);
  }

  w = read_words(in, "premises");
  expect_words(w, "premises", 2);
  std::size_t n = parse_integer<std::size_t>(w[1]);
  std::vector<Premise> premises;
  premises.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    w = read_words(in, "premise");
    expect_words(w, "premise", 6);
    Premise p;
    p.id = w[1];
    p.position = parse_integer<std::size_t>(w[2]);
    p.uses = parse_integer<std::uint32_t>(w[3]);
    std::size_t m = parse_integer<std::size_t>(w[5]);
    if (w.size() != 6 + m) throw std::runtime_error("malformed premise line for " + p.id);
    for (std::size_t j = 0; j < m; ++j) {
      auto parts = split(w[6 + j], ':');
      if (parts.size() != 3) throw std::runtime_error("malformed weight entry for " + p.id);
      p.cooccurrence.emplace_back(parse_integer<FeatureIndex>(parts[0]),
                                  parse_integer<std::uint32_t>(parts[1]));
    }
    if (!std::is_sorted(p.cooccurrence.begin(), p.cooccurrence.end()))
      throw std::runtime_error("unsorted weight entries for " + p.id);
    premises.push_back(std::move(p));
  }
  return NbModel(rows, std::move(counts), std::move(premises), dict_size, fingerprint);
}

NbModel nb_train(const TrainingView& pool, RowPolicy policy) {
  if (pool.pool_size() == 0)
    throw std::invalid_argument("naive Bayes needs a nonempty premise pool");

  const auto rows = pool.training_rows(policy);
  std::vector<std::uint32_t> counts(pool.known_features(), 0);
  std::vector<std::uint32_t> uses(pool.pool_size(), 0);
  std::vector<std::vector<FeatureIndex>> hits(pool.pool_size());

  const auto& mu = pool.corpus().proof_matrix();
  for (auto r : rows) {
    const auto features = pool.entry(r).features.indices();
    for (auto f : features) ++counts[f];
    for (auto p : mu.used(r)) {
      ++uses[p];
      hits[p].insert(hits[p].end(), features.begin(), features.end());
    }
  }

  std::vector<NbModel::Premise> premises(pool.pool_size());
  for (std::size_t p = 0; p < pool.pool_size(); ++p) {
    auto& out = premises[p];
    out.id = pool.entry(p).item.id;
    out.position = p;
    out.uses = uses[p];
    auto& h = hits[p];
    std::sort(h.begin(), h.end());
    for (std::size_t a = 0; a < h.size();) {
      std::size_t b = a;
      while (b < h.size() && h[b] == h[a]) ++b;
      out.cooccurrence.emplace_back(h[a], static_cast<std::uint32_t>(b - a));
      a = b;
    }
  }
  const auto& dict = pool.corpus().dictionary();
  return NbModel(rows.size(), std::move(counts), std::move(premises), dict.size(),
                 dict.fingerprint());
}

}  // namespace premsel
