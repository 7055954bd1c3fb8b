#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace premsel {

using IdSet = std::vector<std::string>;

/// Black-box sufficiency check over candidate dependency sets. Counts every
/// call. Implementations must answer deterministically for a given set.
class SufficiencyOracle {
 public:
  virtual ~SufficiencyOracle() = default;

  bool operator()(const IdSet& candidate) {
    ++calls_;
    return check(candidate);
  }

  std::size_t calls() const { return calls_; }
  void reset_calls() { calls_ = 0; }

  /// True when every superset of a sufficient set is sufficient. Lets the
  /// minimizer skip re-checking elements it has already kept.
  virtual bool monotone() const { return false; }

 protected:
  virtual bool check(const IdSet& candidate) = 0;

 private:
  std::size_t calls_ = 0;
};

/// Oracle from a callable.
class FunctionOracle : public SufficiencyOracle {
 public:
  FunctionOracle(std::function<bool(const IdSet&)> fn, bool monotone)
      : fn_(std::move(fn)), monotone_(monotone) {}
  bool monotone() const override { return monotone_; }

 protected:
  bool check(const IdSet& candidate) override { return fn_(candidate); }

 private:
  std::function<bool(const IdSet&)> fn_;
  bool monotone_;
};

/// Runs a shell command per check: candidate ids one per line on standard
/// input, exit status 0 means sufficient.
class SubprocessOracle : public SufficiencyOracle {
 public:
  explicit SubprocessOracle(std::string command, bool monotone = false)
      : command_(std::move(command)), monotone_(monotone) {}
  bool monotone() const override { return monotone_; }

 protected:
  bool check(const IdSet& candidate) override;

 private:
  std::string command_;
  bool monotone_;
};

class InsufficientStartError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RemovalAttempt {
  IdSet removed;
  bool accepted;  // true when the set stayed sufficient without `removed`
};

struct MinimizationResult {
  IdSet minimal;
  std::size_t oracle_calls = 0;  // including the initial check of the start set
  std::vector<RemovalAttempt> trace;
};

/// Element-wise greedy pass in the given order: an element is dropped unless
/// dropping it makes the set insufficient. For non-monotone oracles the pass
/// repeats over kept elements until nothing changes, so the result is always
/// 1-minimal. Throws InsufficientStartError when `start` itself fails.
MinimizationResult greedy_minimize(const IdSet& start, SufficiencyOracle& oracle);

/// Order helper: `start` sorted by descending corpus position.
IdSet chronological_reverse(const IdSet& start,
                            const std::function<std::size_t(const std::string&)>& position);

/// Chunk sizes |start|/2, |start|/4, ..., 2.
std::vector<std::size_t> halving_schedule(std::size_t n);

/// Tries to drop contiguous chunks of each scheduled size first, then
/// finishes with greedy_minimize. Chunk sizes of 1 or less are skipped.
MinimizationResult batch_minimize(const IdSet& start, SufficiencyOracle& oracle,
                                  const std::vector<std::size_t>& schedule);

/// CSV: step,removed,accepted with removed ids joined by spaces.
void write_trace_csv(std::ostream& out, const MinimizationResult& result);

}  // namespace premsel
