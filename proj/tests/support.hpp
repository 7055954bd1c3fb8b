#pragma once

// Test-only generators and independent reference implementations.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "premsel/corpus.hpp"
#include "premsel/fof.hpp"

namespace premsel::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) {
  return std::uniform_real_distribution<double>(0, 1)(rng) < p;
}

// ---------------------------------------------------------------------------
// Random well-formed formulas

inline const std::vector<std::string>& symbol_pool() {
  static const std::vector<std::string> pool = {
      "a", "b", "f", "g", "h", "p", "q", "r", "c_1", "succ", "Abc", "x y",
      "it's", "back\\slash", "$true", "$distinct", "42", "0", "mul2", "ZZ",
  };
  return pool;
}

inline Term random_term(Rng& rng, std::size_t binders, std::size_t depth) {
  if (binders > 0 && coin(rng, 0.35)) return Term::variable(static_cast<std::uint32_t>(uniform(rng, binders)));
  const auto& pool = symbol_pool();
  std::string sym = pool[uniform(rng, pool.size())];
  std::size_t arity = depth == 0 ? 0 : uniform(rng, 4);
  std::vector<Term> args;
  for (std::size_t i = 0; i < arity; ++i) args.push_back(random_term(rng, binders, depth - 1));
  return Term::apply(std::move(sym), std::move(args));
}

inline Formula random_formula(Rng& rng, std::size_t binders, std::size_t depth) {
  std::size_t pick = depth == 0 ? uniform(rng, 2) : uniform(rng, 9);
  switch (pick) {
    case 0: {
      const auto& pool = symbol_pool();
      std::vector<Term> args;
      std::size_t arity = uniform(rng, 4);
      for (std::size_t i = 0; i < arity; ++i) args.push_back(random_term(rng, binders, 2));
      return Formula::atom(pool[uniform(rng, pool.size())], std::move(args));
    }
    case 1:
      return Formula::equality(random_term(rng, binders, 2), random_term(rng, binders, 2));
    case 2:
      return Formula::negation(random_formula(rng, binders, depth - 1));
    case 3:
    case 4:
      return Formula::quantified(coin(rng) ? FormulaKind::Universal : FormulaKind::Existential,
                                 random_formula(rng, binders + 1, depth - 1));
    default: {
      static const FormulaKind ops[] = {FormulaKind::Conjunction, FormulaKind::Disjunction,
                                        FormulaKind::Implication, FormulaKind::Equivalence};
      return Formula::binary(ops[uniform(rng, 4)], random_formula(rng, binders, depth - 1),
                             random_formula(rng, binders, depth - 1));
    }
  }
}

inline NamedItem random_item(Rng& rng, std::size_t depth) {
  static const Role roles[] = {Role::Axiom, Role::Definition, Role::Theorem, Role::Conjecture};
  static const std::vector<std::string> ids = {"t1", "ax_2", "Big", "l 3", "99", "d'x"};
  return {ids[uniform(rng, ids.size())], roles[uniform(rng, 4)], random_formula(rng, 0, depth)};
}

// ---------------------------------------------------------------------------
// Independent printer with caller-chosen bound variable names. Binder names
// are drawn from a small pool so that shadowing is common; a name is
// rejected when it would capture a reference to an outer binder.

class NamedPrinter {
 public:
  explicit NamedPrinter(Rng& rng) : rng_(rng) {}

  std::string formula(const Formula& f) {
    names_.clear();
    return print(f);
  }

 private:
  static void escaping(const Term& t, std::size_t local, std::set<std::size_t>& out) {
    if (t.is_variable()) {
      if (t.index >= local) out.insert(t.index - local);
      return;
    }
    for (const auto& a : t.args) escaping(a, local, out);
  }

  // Outer binder offsets (0 = binder directly enclosing the quantifier)
  // referenced from inside `f`.
  static void escaping(const Formula& f, std::size_t local, std::set<std::size_t>& out) {
    for (const auto& a : f.args) escaping(a, local, out);
    bool binds = f.kind == FormulaKind::Universal || f.kind == FormulaKind::Existential;
    for (const auto& c : f.children) escaping(c, local + (binds ? 1 : 0), out);
  }

  std::string pick_name(const Formula& body) {
    static const std::vector<std::string> pool = {"X", "Y", "Z", "X1", "Var", "A_b"};
    std::set<std::size_t> refs;
    escaping(body, 1, refs);
    std::set<std::string> forbidden;
    for (auto r : refs) forbidden.insert(names_[names_.size() - 1 - r]);
    for (int attempt = 0; attempt < 8; ++attempt) {
      const auto& n = pool[uniform(rng_, pool.size())];
      if (!forbidden.count(n)) return n;
    }
    return "W" + std::to_string(fresh_++);
  }

  std::string term(const Term& t) {
    if (t.is_variable()) return names_[names_.size() - 1 - t.index];
    std::string out = quote(t.symbol);
    if (!t.args.empty()) {
      out += "( ";
      for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? " , " : "") + term(t.args[i]);
      out += " )";
    }
    return out;
  }

  static std::string quote(const std::string& s) {
    bool plain = !s.empty() && (std::islower(static_cast<unsigned char>(s[0])) ||
                                (s[0] == '$' && s.size() > 1));
    for (char c : s.substr(plain ? 1 : 0))
      plain = plain && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    bool digits = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) != 0;
    });
    if (plain || digits) return s;
    std::string out = "'";
    for (char c : s) {
      if (c == '\'' || c == '\\') out += '\\';
      out += c;
    }
    return out + "'";
  }

  std::string print(const Formula& f) {
    switch (f.kind) {
      case FormulaKind::Atom: {
        Term t = Term::apply(f.predicate, f.args);
        return term(t);
      }
      case FormulaKind::Equality:
        if (coin(rng_, 0.2)) return "( " + term(f.args[0]) + " = " + term(f.args[1]) + " )";
        return term(f.args[0]) + " = " + term(f.args[1]);
      case FormulaKind::Negation:
        if (f.children[0].kind == FormulaKind::Equality && coin(rng_))
          return term(f.children[0].args[0]) + " != " + term(f.children[0].args[1]);
        return "~ " + print(f.children[0]);
      case FormulaKind::Universal:
      case FormulaKind::Existential: {
        std::string name = pick_name(f.children[0]);
        names_.push_back(name);
        std::string body = print(f.children[0]);
        names_.pop_back();
        return std::string(f.kind == FormulaKind::Universal ? "!" : "?") + " [" + name + "] : " + body;
      }
      default: {
        const char* op = f.kind == FormulaKind::Conjunction   ? "&"
                         : f.kind == FormulaKind::Disjunction ? "|"
                         : f.kind == FormulaKind::Implication ? "=>"
                                                              : "<=>";
        return "(" + print(f.children[0]) + " " + op + " " + print(f.children[1]) + ")";
      }
    }
  }

  Rng& rng_;
  std::vector<std::string> names_;
  std::size_t fresh_ = 0;
};

// ---------------------------------------------------------------------------
// Feature oracle: walks the AST collecting every term node and symbol.

inline std::string oracle_term_key(const Term& t) {
  if (t.is_variable()) return "*" + std::to_string(t.index);
  std::string out = t.symbol;
  if (!t.args.empty()) {
    out += "(";
    for (std::size_t i = 0; i < t.args.size(); ++i) out += (i ? "," : "") + oracle_term_key(t.args[i]);
    out += ")";
  }
  return out;
}

inline void oracle_term_features(const Term& t, std::set<std::string>& out) {
  out.insert("t:" + oracle_term_key(t));
  if (t.is_variable()) return;
  out.insert("s:" + t.symbol + "/" + std::to_string(t.args.size()));
  for (const auto& a : t.args) oracle_term_features(a, out);
}

inline std::set<std::string> oracle_features(const Formula& f) {
  std::set<std::string> out;
  if (f.kind == FormulaKind::Atom) out.insert("s:" + f.predicate + "/" + std::to_string(f.args.size()));
  if (f.kind == FormulaKind::Equality) out.insert("s:=/2");
  for (const auto& a : f.args) oracle_term_features(a, out);
  for (const auto& c : f.children) {
    auto sub = oracle_features(c);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Naive-Bayes count-table oracle: log posterior odds of "premise used"
// computed as a ratio of products of smoothed frequencies.

inline std::vector<double> nb_oracle_scores(const TrainingView& view, RowPolicy policy,
                                            const FeatureVector& conj) {
  const auto rows = view.training_rows(policy);
  std::vector<double> out;
  for (std::size_t p = 0; p < view.pool_size(); ++p) {
    double r = 0, u = 0;
    for (auto row : rows) {
      r += 1;
      if (view.used(row, p)) u += 1;
    }
    double pos = (u + 1) / (r + 2);
    double neg = (r - u + 1) / (r + 2);
    for (auto f : conj.indices()) {
      double n_f = 0, co = 0;
      for (auto row : rows) {
        if (!view.entry(row).features.contains(f)) continue;
        n_f += 1;
        if (view.used(row, p)) co += 1;
      }
      if (n_f == 0) continue;  // feature outside the training rows
      pos *= (co + 1) / (u + 2);
      neg *= (n_f - co + 1) / (r - u + 2);
    }
    out.push_back(std::log(pos / neg));
  }
  return out;
}

inline std::vector<double> nb_oracle_scores(const TrainingView& view, RowPolicy policy) {
  return nb_oracle_scores(view, policy, view.conjecture_features());
}

// ---------------------------------------------------------------------------
// Planted corpus: `keys` key axioms, then theorems. Each theorem mentions the
// key symbols of the axioms it depends on, some distractor symbols shared at
// random, and one symbol of its own. With probability `noise` each planted
// dependency is replaced by a random earlier item whose key is not mentioned.

struct PlantedConfig {
  std::size_t items = 200;
  std::size_t keys = 15;
  std::size_t min_deps = 2;
  std::size_t max_deps = 4;
  std::size_t distractor_pool = 8;
  std::size_t distractors = 2;
  double noise = 0.1;
  std::uint64_t seed = 1;
};

struct PlantedCorpus {
  std::vector<NamedItem> items;
  DependencyList deps;
  Corpus build() const { return Corpus::build(items, deps); }
};

inline Formula conjunction_of(std::vector<Formula> parts) {
  Formula out = std::move(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i)
    out = Formula::binary(FormulaKind::Conjunction, std::move(out), std::move(parts[i]));
  return out;
}

inline PlantedCorpus planted_corpus(const PlantedConfig& cfg) {
  Rng rng(cfg.seed);
  PlantedCorpus pc;
  auto x = [] { return std::vector<Term>{Term::variable(0)}; };
  for (std::size_t k = 0; k < cfg.keys; ++k) {
    Formula body = Formula::binary(FormulaKind::Implication,
                                   Formula::atom("key" + std::to_string(k), x()),
                                   Formula::atom("elem", x()));
    pc.items.push_back({"ax" + std::to_string(k), Role::Axiom,
                        Formula::quantified(FormulaKind::Universal, std::move(body))});
  }
  for (std::size_t j = cfg.keys; j < cfg.items; ++j) {
    std::size_t count = cfg.min_deps + uniform(rng, cfg.max_deps - cfg.min_deps + 1);
    std::vector<std::size_t> keys(cfg.keys);
    for (std::size_t k = 0; k < cfg.keys; ++k) keys[k] = k;
    std::shuffle(keys.begin(), keys.end(), rng);
    keys.resize(std::min(count, cfg.keys));
    std::sort(keys.begin(), keys.end());

    std::vector<Formula> guards;
    for (auto k : keys) guards.push_back(Formula::atom("key" + std::to_string(k), x()));
    for (std::size_t d = 0; d < cfg.distractors; ++d)
      guards.push_back(Formula::atom("dis" + std::to_string(uniform(rng, cfg.distractor_pool)), x()));
    Formula body = Formula::binary(FormulaKind::Implication, conjunction_of(std::move(guards)),
                                   Formula::atom("own" + std::to_string(j), x()));
    std::string id = "th" + std::to_string(j);
    pc.items.push_back({id, Role::Theorem, Formula::quantified(FormulaKind::Universal, std::move(body))});

    std::vector<std::string> dep_ids;
    for (auto k : keys) {
      std::string dep = "ax" + std::to_string(k);
      if (coin(rng, cfg.noise)) {
        for (int attempt = 0; attempt < 32; ++attempt) {
          std::size_t q = uniform(rng, j);
          bool planted = q < cfg.keys && std::binary_search(keys.begin(), keys.end(), q);
          if (!planted) {
            dep = pc.items[q].id;
            break;
          }
        }
      }
      if (std::find(dep_ids.begin(), dep_ids.end(), dep) == dep_ids.end()) dep_ids.push_back(dep);
    }
    pc.deps.push_back({id, dep_ids});
  }
  return pc;
}

}  // namespace premsel::testing
