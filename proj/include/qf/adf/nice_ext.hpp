#pragma once

#include <random>
#include <stdexcept>

#include "qf/adf/injection.hpp"

namespace qf::adf {

class HypothesisViolated : public std::runtime_error {
 public:
  HypothesisViolated(int number, const std::string& what)
      : std::runtime_error("hypothesis (" + std::to_string(number) + ") violated: " + what),
        number_(number) {}
  int number() const { return number_; }

 private:
  int number_;
};

struct NiceExtInput {
  CertSet a, b, c;
  AffineInjection f, g;
  std::vector<Nat> F;
};

struct NiceExtResult {
  AffineInjection h;
  std::vector<Nat> d1, d2, d3;
  std::vector<Nat> f_vs_g;      // points of A where f and g differ
  std::vector<Nat> exceptions;  // D3 together with f_vs_g
  Json json() const;
};

// Throws HypothesisViolated naming the first failing hypothesis (1)-(7).
void check_nice_ext_hypotheses(const NiceExtInput& in);
NiceExtResult nice_ext(const NiceExtInput& in);

struct NiceExtCheck {
  bool injective = false;
  bool extends_f = false;
  bool almost_g = false;  // h and g differ only at the stated exceptions
  bool covers_f = false;
  bool into_c = false;
  bool ok() const { return injective && extends_f && almost_g && covers_f && into_c; }
  Json json() const;
};

NiceExtCheck verify_nice_ext(const NiceExtInput& in, const NiceExtResult& out);

// Random instance satisfying (1)-(7), built from progressions and affine maps.
NiceExtInput random_nice_ext_instance(std::mt19937_64& rng);
// Copy of `in` violating hypothesis `number` (1-7) while keeping the earlier ones.
NiceExtInput nice_ext_mutant(const NiceExtInput& in, int number);

Json nice_ext_input_json(const NiceExtInput& in);
NiceExtInput nice_ext_input_from(const Json& j);

}  // namespace qf::adf
