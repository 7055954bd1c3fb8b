#include "premsel/minimize.hpp"

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstdio>
#include <ostream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <unordered_map>

namespace premsel {

bool SubprocessOracle::check(const IdSet& candidate) {
  // A command may exit without reading its input; don't die of SIGPIPE.
  auto* previous = std::signal(SIGPIPE, SIG_IGN);
  FILE* pipe = ::popen(command_.c_str(), "w");
  if (!pipe) {
    std::signal(SIGPIPE, previous);
    throw std::runtime_error("cannot start oracle command '" + command_ + "'");
  }
  std::string input;
  for (const auto& id : candidate) {
    input += id;
    input += '\n';
  }
  // Unbuffered writes: a stdio flush failing at pclose would hide the status.
  const int fd = ::fileno(pipe);
  for (std::size_t done = 0; done < input.size();) {
    auto n = ::write(fd, input.data() + done, input.size() - done);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;  // reader gone
    done += static_cast<std::size_t>(n);
  }
  int status = ::pclose(pipe);
  std::signal(SIGPIPE, previous);
  if (status == -1) throw std::runtime_error("oracle command '" + command_ + "' failed");
  return WIFEXITED(status) && WEXITSTATUS(status) == 0;
}

namespace {

IdSet without(const IdSet& set, const IdSet& removed) {
  IdSet out;
  out.reserve(set.size());
  for (const auto& e : set)
    if (std::find(removed.begin(), removed.end(), e) == removed.end()) out.push_back(e);
  return out;
}

IdSet dedupe(const IdSet& start) {
  IdSet out;
  for (const auto& e : start)
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  return out;
}

void check_start(const IdSet& start, SufficiencyOracle& oracle) {
  if (!oracle(start))
    throw InsufficientStartError("the starting dependency set is not sufficient");
}

// Element-wise passes over `current`, which is known to be sufficient.
void greedy_passes(IdSet& current, SufficiencyOracle& oracle, MinimizationResult& result) {
  // Version of `current` at which each kept element was last probed.
  std::unordered_map<std::string, std::size_t> confirmed;
  std::size_t version = 0;
  while (true) {
    bool probed = false;
    const IdSet snapshot = current;
    for (const auto& e : snapshot) {
      auto it = confirmed.find(e);
      if (it != confirmed.end() && (oracle.monotone() || it->second == version)) continue;
      probed = true;
      IdSet candidate = without(current, {e});
      bool ok = oracle(candidate);
      result.trace.push_back({{e}, ok});
      if (ok) {
        current = std::move(candidate);
        confirmed.erase(e);
        ++version;
      } else {
        confirmed[e] = version;
      }
    }
    if (!probed) break;
  }
}

}  // namespace

MinimizationResult greedy_minimize(const IdSet& start, SufficiencyOracle& oracle) {
  const auto calls0 = oracle.calls();
  IdSet current = dedupe(start);
  check_start(current, oracle);
  MinimizationResult result;
  greedy_passes(current, oracle, result);
  result.minimal = std::move(current);
  result.oracle_calls = oracle.calls() - calls0;
  return result;
}

IdSet chronological_reverse(const IdSet& start,
                            const std::function<std::size_t(const std::string&)>& position) {
  IdSet out = dedupe(start);
  std::stable_sort(out.begin(), out.end(), [&](const std::string& a, const std::string& b) {
    return position(a) > position(b);
  });
  return out;
}

std::vector<std::size_t> halving_schedule(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t s = n / 2; s >= 2; s /= 2) out.push_back(s);
  return out;
}

MinimizationResult batch_minimize(const IdSet& start, SufficiencyOracle& oracle,
                                  const std::vector<std::size_t>& schedule) {
  const auto calls0 = oracle.calls();
  IdSet current = dedupe(start);
  check_start(current, oracle);
  MinimizationResult result;
  for (auto size : schedule) {
    if (size <= 1) continue;
    const IdSet level = current;
    for (std::size_t lo = 0; lo < level.size(); lo += size) {
      IdSet chunk(level.begin() + static_cast<std::ptrdiff_t>(lo),
                  level.begin() + static_cast<std::ptrdiff_t>(std::min(level.size(), lo + size)));
      IdSet candidate = without(current, chunk);
      if (candidate.size() == current.size()) continue;
      bool ok = oracle(candidate);
      result.trace.push_back({chunk, ok});
      if (ok) current = std::move(candidate);
    }
  }
  greedy_passes(current, oracle, result);
  result.minimal = std::move(current);
  result.oracle_calls = oracle.calls() - calls0;
  return result;
}

void write_trace_csv(std::ostream& out, const MinimizationResult& result) {
  out << "step,removed,accepted\n";
  for (std::size_t k = 0; k < result.trace.size(); ++k) {
    const auto& t = result.trace[k];
    out << k + 1 << ',';
    for (std::size_t j = 0; j < t.removed.size(); ++j) {
      if (j) out << ' ';
      out << t.removed[j];
    }
    out << ',' << (t.accepted ? "yes" : "no") << '\n';
  }
}

}  // namespace premsel
