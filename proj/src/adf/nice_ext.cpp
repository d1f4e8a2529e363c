#include "qf/adf/nice_ext.hpp"

#include <algorithm>
#include <set>

namespace qf::adf {

void check_nice_ext_hypotheses(const NiceExtInput& in) {
  if (!(in.a - in.b).empty()) throw HypothesisViolated(1, "A is not a subset of B");
  if (!(in.b - in.a).infinite()) throw HypothesisViolated(1, "B \\ A is finite");
  if (auto r = in.f.injectivity(); !r.ok) throw HypothesisViolated(2, "f is not injective: " + r.reason);
  if (!in.f.domain().same_as(in.a)) throw HypothesisViolated(2, "dom f differs from A");
  if (!(in.f.image() - in.c).empty()) throw HypothesisViolated(2, "f leaves C");
  if (auto r = in.g.injectivity(); !r.ok) throw HypothesisViolated(3, "g is not injective: " + r.reason);
  if (!in.g.domain().same_as(in.b)) throw HypothesisViolated(3, "dom g differs from B");
  const CertSet ran_g = in.g.image();
  if ((ran_g - in.c).infinite()) throw HypothesisViolated(4, "ran(g) \\ C is infinite");
  if (!(in.c - ran_g).infinite()) throw HypothesisViolated(5, "C \\ ran(g) is finite");
  if (!differences(in.f, in.g, in.a).holds) throw HypothesisViolated(6, "f and g differ infinitely often on A");
  for (Nat y : in.F)
    if (!in.c.contains(y)) throw HypothesisViolated(7, std::to_string(y) + " in F is not in C");
}

NiceExtResult nice_ext(const NiceExtInput& in) {
  check_nice_ext_hypotheses(in);
  NiceExtResult out;
  const CertSet rest = in.b - in.a;
  const CertSet ran_g = in.g.image();
  auto in_rest = [&](std::optional<Nat> x) { return x && rest.contains(*x); };

  for (Nat y : (ran_g - in.c).elements())
    if (auto x = in.g.preimage(y); in_rest(x)) out.d1.push_back(*x);
  std::sort(out.d1.begin(), out.d1.end());
  out.f_vs_g = differences(in.f, in.g, in.a).exceptions;
  std::set<Nat> d2;
  for (Nat y : out.f_vs_g)
    if (auto x = in.g.preimage(*in.f(y)); in_rest(x)) d2.insert(*x);
  out.d2.assign(d2.begin(), d2.end());

  std::set<Nat> d3(out.d1.begin(), out.d1.end());
  d3.insert(d2.begin(), d2.end());
  std::set<Nat> targets_f(in.F.begin(), in.F.end());
  for (Nat x : rest.first(static_cast<Nat>(targets_f.size() + d3.size()))) {
    if (d3.size() >= targets_f.size()) break;
    d3.insert(x);
  }
  out.d3.assign(d3.begin(), d3.end());

  // ran(h') where h' = f on A and g on (B \ A) \ D3.
  auto in_ran_h1 = [&](Nat y) {
    if (in.f.preimage(y)) return true;
    auto x = in.g.preimage(y);
    return in_rest(x) && !d3.count(*x);
  };
  std::vector<Nat> targets;
  for (Nat y : targets_f)
    if (!in_ran_h1(y)) targets.push_back(y);
  const std::size_t need = out.d3.size() - targets.size();
  std::set<Nat> pool;
  for (Nat x : out.d3)
    if (auto y = in.g(x); y && in.c.contains(*y)) pool.insert(*y);
  for (Nat x : out.f_vs_g)
    if (auto y = in.g(x); y && in.c.contains(*y)) pool.insert(*y);
  for (Nat y : (in.c - ran_g).first(static_cast<Nat>(need + out.f_vs_g.size() + in.F.size())))
    pool.insert(y);
  const std::set<Nat> chosen(targets.begin(), targets.end());
  for (Nat y : pool) {
    if (targets.size() == out.d3.size()) break;
    if (!chosen.count(y) && !in_ran_h1(y)) targets.push_back(y);
  }
  if (targets.size() != out.d3.size()) throw std::logic_error("nice_ext: too few free values in C");

  std::vector<AffinePiece> pieces = in.f.pieces();
  const AffineInjection g_rest = in.g.restricted(rest);
  pieces.insert(pieces.end(), g_rest.pieces().begin(), g_rest.pieces().end());
  std::map<Nat, Nat> patch = in.f.patch();
  for (const auto& [x, y] : in.g.patch())
    if (rest.contains(x)) patch[x] = y;
  for (std::size_t i = 0; i < out.d3.size(); ++i) patch[out.d3[i]] = targets[i];
  out.h = AffineInjection(std::move(pieces), std::move(patch));

  std::set<Nat> exc(d3.begin(), d3.end());
  exc.insert(out.f_vs_g.begin(), out.f_vs_g.end());
  out.exceptions.assign(exc.begin(), exc.end());
  return out;
}

Json NiceExtResult::json() const {
  return Json{{"h", injection_json(h)},         {"D1", nats_json(d1)},
              {"D2", nats_json(d2)},            {"D3", nats_json(d3)},
              {"f_vs_g", nats_json(f_vs_g)},    {"exceptions", nats_json(exceptions)}};
}

Json NiceExtCheck::json() const {
  return Json{{"injective", injective}, {"extends_f", extends_f}, {"almost_g", almost_g},
              {"covers_F", covers_f},   {"into_C", into_c},       {"ok", ok()}};
}

NiceExtCheck verify_nice_ext(const NiceExtInput& in, const NiceExtResult& out) {
  NiceExtCheck c;
  c.injective = out.h.injectivity().ok;
  auto ext = differences(out.h, in.f, in.a);
  c.extends_f = ext.holds && ext.exceptions.empty();
  auto vs_g = differences(out.h, in.g, in.b);
  c.almost_g = vs_g.holds && std::includes(out.exceptions.begin(), out.exceptions.end(),
                                           vs_g.exceptions.begin(), vs_g.exceptions.end());
  c.covers_f = std::all_of(in.F.begin(), in.F.end(), [&](Nat y) {
    auto x = out.h.preimage(y);
    return x && out.h(*x) == y;
  });
  c.into_c = (out.h.image() - in.c).empty() && out.h.domain().same_as(in.b);
  return c;
}

namespace {

Nat uniform(std::mt19937_64& rng, Nat lo, Nat hi) {
  return std::uniform_int_distribution<Nat>(lo, hi)(rng);
}

template <class T>
T pick(std::mt19937_64& rng, const std::vector<T>& xs) {
  return xs[uniform(rng, 0, static_cast<Nat>(xs.size()) - 1)];
}

}  // namespace

NiceExtInput random_nice_ext_instance(std::mt19937_64& rng) {
  NiceExtInput in;
  const Nat e = uniform(rng, 1, 3), b0 = uniform(rng, 0, 3);
  in.b = CertSet::progression(b0, e);
  const Nat m = uniform(rng, 2, 4), r = uniform(rng, 0, m - 1);
  in.a = CertSet::progression(b0 + e * r, e * m);
  std::vector<Nat> extra;
  for (Nat k = uniform(rng, 0, 2); k > 0; --k) extra.push_back(pick(rng, (in.b - in.a).first(10)));
  in.a = in.a | CertSet::finite(extra);

  const Nat p = uniform(rng, 2, 3), q = uniform(rng, 0, 4);
  in.g = AffineInjection::affine(in.b, p, q);
  if (uniform(rng, 0, 1)) {
    auto firsts = in.b.first(12);
    Nat u = pick(rng, firsts), v = pick(rng, firsts);
    if (u != v) in.g = in.g.overridden({{u, *in.g(v)}, {v, *in.g(u)}});
  }
  const CertSet ran_g = in.g.image();
  const CertSet z = CertSet::progression(q + 1, p);
  std::vector<Nat> dropped;
  for (Nat k = uniform(rng, 0, 3); k > 0; --k) dropped.push_back(pick(rng, ran_g.first(10)));
  in.c = (ran_g - CertSet::finite(dropped)) | z;

  in.f = in.g.restricted(in.a);
  std::vector<Nat> to_patch;
  for (Nat x : in.a.first(40))
    if (!in.c.contains(*in.f(x))) to_patch.push_back(x);
  for (Nat k = uniform(rng, 0, 2); k > 0; --k) to_patch.push_back(pick(rng, in.a.first(10)));
  std::vector<Nat> values = z.first(20);
  for (Nat x : (in.b - in.a).first(10))
    if (in.c.contains(*in.g(x))) values.push_back(*in.g(x));
  std::shuffle(values.begin(), values.end(), rng);
  for (Nat x : to_patch) {
    for (Nat v : values) {
      if (in.f.preimage(v)) continue;
      in.f = in.f.overridden({{x, v}});
      break;
    }
  }
  for (Nat k = uniform(rng, 0, 4); k > 0; --k) in.F.push_back(pick(rng, in.c.first(30)));
  std::sort(in.F.begin(), in.F.end());
  in.F.erase(std::unique(in.F.begin(), in.F.end()), in.F.end());
  return in;
}

NiceExtInput nice_ext_mutant(const NiceExtInput& in, int number) {
  NiceExtInput out = in;
  const CertSet rest = in.b - in.a;
  switch (number) {
    case 1:
      out.b = in.a;
      out.g = in.g.restricted(in.a);
      break;
    case 2: {
      auto xs = in.a.first(2);
      out.f = in.f.overridden({{xs[0], *in.f(xs[1])}});
      break;
    }
    case 3: {
      auto xs = rest.first(2);
      out.g = in.g.overridden({{xs[0], *in.g(xs[1])}});
      break;
    }
    case 4:
      out.c = in.f.image() | (in.c - in.g.image());
      break;
    case 5:
      out.c = in.g.image() | in.f.image();
      break;
    case 6: {
      const auto& pc = in.g.pieces().front();
      out.f = AffineInjection::affine(in.a, pc.p, pc.q + 1);
      out.c = in.c | out.f.image();
      break;
    }
    case 7:
      out.F.push_back(*in.c.complement().min());
      break;
    default:
      throw std::invalid_argument("hypotheses are numbered 1-7");
  }
  return out;
}

Json nice_ext_input_json(const NiceExtInput& in) {
  return Json{{"A", cert_set_json(in.a)},  {"B", cert_set_json(in.b)}, {"C", cert_set_json(in.c)},
              {"f", injection_json(in.f)}, {"g", injection_json(in.g)}, {"F", nats_json(in.F)}};
}

NiceExtInput nice_ext_input_from(const Json& j) {
  NiceExtInput in;
  in.a = cert_set_from(j.at("A"));
  in.b = cert_set_from(j.at("B"));
  in.c = cert_set_from(j.at("C"));
  in.f = injection_from(j.at("f"));
  in.g = injection_from(j.at("g"));
  in.F = j.value("F", std::vector<Nat>{});
  return in;
}

}  // namespace qf::adf
