#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qf/forcing/condition.hpp"

namespace qf::forcing {

// D_n = {p : n_p >= n}, E_xi = {p : xi in a_p}.
struct DenseSet {
  char kind = 'D';
  Index value = 0;
  std::string name() const;
  bool operator==(const DenseSet&) const = default;
};

DenseSet dense_set_from(const std::string& s);  // "D_8", "E_3", "D8", "E3"

// E_xi for every index, then D_{2^j} up to and including the horizon.
std::vector<DenseSet> default_schedule(const PairedFamilies& fam, Index horizon);

struct Hit {
  std::size_t step = 0;
  DenseSet set;
  bool extended = false;  // false when the current condition already lay in the set
  Index n = 0;
  Json amalgamation;  // null unless extended
};

struct Entry {
  std::size_t stage = 0;  // first chain position whose a contains xi
  Index cut = 0;          // n of the condition before it
};

struct RunReport {
  std::vector<Json> failures;
  std::size_t chain_steps = 0, blocks = 0, indices = 0, rows = 0;
  Rational max_norm, max_inverse_norm;
  std::map<Index, bool> symbolic_tail;
  bool ok() const { return failures.empty(); }
  Json json() const;
};

struct GenericRun {
  ForcingConfig config;
  PairedFamilies families;
  std::vector<DenseSet> schedule;
  std::vector<Condition> chain;  // p_0 = trivial >= p_1 >= ...
  std::vector<Hit> hits;
  std::map<Index, Entry> entry;
  std::optional<std::string> error;
  RunReport report;

  const Condition& last() const { return chain.back(); }
  Json json() const;
};

GenericRun run_generic(const PairedFamilies& fam, const std::vector<DenseSet>& schedule,
                       const ForcingConfig& config);

RunReport verify_run(const GenericRun& run);

GenericRun run_from(const Json& j);

}  // namespace qf::forcing
