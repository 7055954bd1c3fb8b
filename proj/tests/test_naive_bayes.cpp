#include <doctest.h>

#include <cmath>
#include <sstream>

#include "premsel/eval.hpp"
#include "premsel/naive_bayes.hpp"
#include "support.hpp"

using namespace premsel;

namespace {

// p is a premise; c1 uses it and mentions f1, c2 does not and mentions f2.
Corpus two_row_corpus() {
  auto items = parse_items(
      "fof(p, axiom, prem).\n"
      "fof(q, axiom, other).\n"
      "fof(c1, theorem, f1).\n"
      "fof(c2, theorem, f2).\n"
      "fof(goal, theorem, f1).\n");
  return Corpus::build(items, parse_dependencies("c1: p\n"));
}

FeatureIndex index_of(const Corpus& c, const char* key) {
  return static_cast<FeatureIndex>(c.dictionary().find(key));
}

}  // namespace

TEST_CASE("nb: prior of a premise used by the single training row") {
  auto items = parse_items("fof(p, axiom, a). fof(c, theorem, b).");
  auto c = Corpus::build(items, parse_dependencies("c: p"));
  auto model = nb_train(c.full_view());
  CHECK(model.rows() == 1);
  CHECK(model.prior_log_odds(0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));  // (2/3)/(1/3)
}

TEST_CASE("nb: smoothed weights on the two-row corpus") {
  auto c = two_row_corpus();
  auto view = c.training_view(4);
  auto model = nb_train(view);
  CHECK(model.rows() == 2);
  auto f1 = index_of(c, "s:f1/0"), f2 = index_of(c, "s:f2/0");
  // P(f1|used) = 2/3, P(f1|unused) = 1/3.
  CHECK(model.weight(0, f1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(model.weight(0, f2) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  // A feature in no row is outside the model.
  CHECK(model.weight(0, index_of(c, "s:prem/0")) == 0.0);
  CHECK_FALSE(model.trained_feature(index_of(c, "s:prem/0")));
}

TEST_CASE("nb: scores") {
  auto c = two_row_corpus();
  auto view = c.training_view(4);
  auto model = nb_train(view);

  auto empty = model.score(FeatureVector());
  for (std::size_t k = 0; k < model.premise_count(); ++k)
    CHECK(empty[k] == model.prior_log_odds(k));

  auto s = model.score(view.conjecture_features());
  CHECK(s[0] > s[1]);  // p used by the row that looks like the goal, q never
  CHECK(s[0] == doctest::Approx(std::log(2.0)).epsilon(1e-14));  // even prior, one ln 2 feature

  auto again = vectorize(view.conjecture().item.formula, c.dictionary()).truncated(view.known_features());
  CHECK(model.score(again) == s);
  CHECK(nb_score(model, again) == s);
}

TEST_CASE("property: score is affine in the feature vector") {
  auto c = premsel::testing::planted_corpus({.items = 60, .keys = 6, .seed = 8}).build();
  auto view = c.training_view(55);
  auto model = nb_train(view);
  premsel::testing::Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    std::vector<FeatureIndex> base;
    for (FeatureIndex i = 0; i < view.known_features(); ++i)
      if (premsel::testing::coin(rng, 0.2)) base.push_back(i);
    auto extra = static_cast<FeatureIndex>(premsel::testing::uniform(rng, view.known_features()));
    FeatureVector without(base), with_extra(base);
    if (without.contains(extra)) continue;
    base.push_back(extra);
    with_extra = FeatureVector(base);
    auto s0 = model.score(without), s1 = model.score(with_extra);
    for (std::size_t k = 0; k < model.premise_count(); ++k)
      CHECK(s1[k] - s0[k] == doctest::Approx(model.weight(k, extra)).epsilon(1e-12));
  }
}

TEST_CASE("property: probabilities strictly inside (0,1), weights finite") {
  auto c = premsel::testing::planted_corpus({.items = 80, .keys = 8, .seed = 9}).build();
  auto model = nb_train(c.full_view());
  for (std::size_t k = 0; k < model.premise_count(); ++k) {
    CHECK(std::isfinite(model.prior_log_odds(k)));
    for (FeatureIndex i = 0; i < c.dictionary().size(); ++i) CHECK(std::isfinite(model.weight(k, i)));
  }
}

TEST_CASE("property: ranking invariant under strictly monotone transforms") {
  auto c = premsel::testing::planted_corpus({.items = 60, .keys = 6, .seed = 10}).build();
  auto view = c.training_view(50);
  auto s = nb_train(view).score(view.conjecture_features());
  std::vector<double> t(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) t[k] = std::exp(s[k] / 4) * 3 + 1;
  CHECK(rank_by_scores(view, s).premises == rank_by_scores(view, t).premises);
}

TEST_CASE("nb: matches the count-table oracle across a corpus") {
  auto c = premsel::testing::planted_corpus({.items = 50, .keys = 5, .seed = 12}).build();
  for (std::size_t i = 1; i < c.size(); ++i) {
    auto view = c.training_view(i);
    for (auto policy : {RowPolicy::TheoremsOnly, RowPolicy::AllItems}) {
      auto s = nb_train(view, policy).score(view.conjecture_features());
      auto oracle = premsel::testing::nb_oracle_scores(view, policy);
      REQUIRE(s.size() == oracle.size());
      for (std::size_t k = 0; k < s.size(); ++k) CHECK(std::abs(s[k] - oracle[k]) <= 1e-12);
    }
  }
}

TEST_CASE("nb: empty pool and serialization") {
  auto c = two_row_corpus();
  CHECK_THROWS_AS(nb_train(c.training_view(0)), std::invalid_argument);

  auto view = c.training_view(4);
  auto model = nb_train(view);
  std::stringstream ss;
  model.save(ss);
  auto back = NbModel::load(ss);
  CHECK(back.rows() == model.rows());
  CHECK(back.dictionary_fingerprint() == model.dictionary_fingerprint());
  CHECK(back.score(view.conjecture_features()) == model.score(view.conjecture_features()));

  std::stringstream broken("premsel-nb 1\nrows x\n");
  CHECK_THROWS(NbModel::load(broken));
}
