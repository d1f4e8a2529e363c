#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qf/adf/coherent.hpp"
#include "qf/forcing/run.hpp"

namespace qf::cli {

struct RunConfig {
  Rational rho = 4;
  Rational c1 = 1;
  Rational c2 = 64;
  Rational delta = Rational(1, 100);
  Rational complement_budget_sq = 64;
  Index horizon = 512;
  Index search_cap = 4096;
  bool align = true;
  adf::Ordinal cap = adf::Ordinal::omega_times(2);
  adf::Nat sample_j = 40;
  std::size_t vertex_cap = kDefaultVertexCap;
  std::uint64_t seed = 1;
  std::vector<std::string> schedule;  // empty: default schedule

  forcing::ForcingConfig forcing() const;
  geom::ExtensionConfig extension() const;
  adf::IsoChainConfig iso() const;
  Json json() const;
};

RunConfig run_config_from(const Json& j, RunConfig base = {});

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Every command yields a document {"command", "config", "result", "failures"}.
struct Output {
  std::string command;
  Json result;
  std::size_t failures = 0;
  Json document(const RunConfig& cfg) const;
};

Json read_json_file(const std::string& path);  // throws std::runtime_error on I/O or parse errors
// The "result" of a command document, or the value itself.
const Json& payload(const Json& j);

Output cmd_build_adf(const adf::FamilyGenerator& gen);
// B = members with index below `split` (or at the listed positions), C = the rest.
Output cmd_check_separation(const adf::Family& fam, const std::optional<adf::Ordinal>& split,
                            const std::vector<std::size_t>& inside);
Output cmd_build_coherent(const adf::Family& fam, const RunConfig& cfg);
Output cmd_mad_census(const std::vector<adf::CertSet>& family, const adf::CertSet& x);

// op-norm, lower-bound, hahn-banach, extend-iso, quotient-norm, section-norm, lifting-index,
// restriction-index, r-inverse-norm. A null input selects the built-in demo.
Output cmd_compute(const std::string& op, const Json& input, const RunConfig& cfg);
std::vector<std::string> compute_ops();

Output cmd_forge(const forcing::PairedFamilies& fam, const RunConfig& cfg);
Output cmd_verify_run(const Json& run);

}  // namespace qf::cli
