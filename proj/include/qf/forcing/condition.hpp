#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qf/core/matrix.hpp"
#include "qf/forcing/families.hpp"
#include "qf/geom/extension.hpp"

namespace qf::forcing {

struct ForcingConfig {
  Rational rho = 4;
  Rational c1 = 1;
  Rational c2 = 64;
  Rational delta = Rational(1, 100);
  Rational complement_budget_sq = 64;
  Index horizon = 512;
  Index search_cap = 4096;  // largest admissible n_r - n
  bool align = true;        // n_r is a multiple of the tail period lcm of a_r

  geom::ExtensionConfig extension() const;
  Json json() const;
};

ForcingConfig forcing_config_from(const Json& j, ForcingConfig base = {});

class SearchExhausted : public ForcingError {
 public:
  using ForcingError::ForcingError;
};

class NotStemCompatible : public ForcingError {
 public:
  using ForcingError::ForcingError;
};

class VerificationFailed : public ForcingError {
 public:
  using ForcingError::ForcingError;
};

// One diagonal block on [lo, hi) with its inverse.
struct Block {
  RMatrix m;
  RMatrix inv;
  Window window() const { return m.row_window(); }
};
using BlockPtr = std::shared_ptr<const Block>;

BlockPtr make_block(RMatrix m);                   // inverse by elimination
BlockPtr make_block(RMatrix m, RMatrix inverse);  // inverse supplied, checked by validation

// p = (n_p, M_p, a_p); M_p is block diagonal with blocks on consecutive windows from 0 to n_p.
struct Condition {
  Index n = 0;
  std::vector<BlockPtr> blocks;
  std::vector<Index> a;  // increasing

  static Condition trivial() { return {}; }
  BlockLayout layout() const;
  bool has(Index xi) const;
  // (M_p v) restricted to w, for w inside [0, n_p); v is read on w's block range.
  WindowVector apply(const WindowVector& v) const;
  RMatrix matrix() const;  // assembled n_p x n_p
  Json json() const;       // blocks as sparse triplets
  Json summary() const;    // n, a and the cuts only
};

Condition condition_from(const Json& j);

struct Violation {
  std::string clause;  // "a", "b" or "c"
  std::string what;
  std::optional<Rational> measured;
  Json json() const;
};

// With check_blocks false, clause (b) is skipped.
std::vector<Violation> validate_condition(const Condition& p, const PairedFamilies& fam,
                                          const ForcingConfig& config, bool check_blocks = true);

struct LeqResult {
  bool holds = false;
  Json witness;  // failing clause, index and coordinate; null when holds
  explicit operator bool() const { return holds; }
};

// p <= q: p extends q.
LeqResult cond_leq(const Condition& p, const Condition& q, const PairedFamilies& fam);

struct AmalgamationInfo {
  Index n_r = 0;
  Index period = 1;
  std::vector<Index> candidates;  // n_r values tried
  Rational section_f, section_g;  // ||Pi_{F,a_r,n_r}||, ||Pi_{G,a_r,n_r}||
  Rational r_inv_f, r_inv_g;      // ||R^-1|| on [n, n_r)
  Rational v_gf, v_fg;            // ||V_GF||, ||V_FG||
  Json extension;
  Json json() const;
};

// r <= p, q with n_r >= N, for p and q sharing (n, M).
Condition amalgamate(const Condition& p, const Condition& q, Index big_n, const PairedFamilies& fam,
                     const ForcingConfig& config, AmalgamationInfo* info = nullptr);

Condition dense_hit_D(const Condition& p, Index n, const PairedFamilies& fam,
                      const ForcingConfig& config, AmalgamationInfo* info = nullptr);
Condition dense_hit_E(const Condition& p, Index xi, const PairedFamilies& fam,
                      const ForcingConfig& config, AmalgamationInfo* info = nullptr);

}  // namespace qf::forcing
