#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "qf/adf/coherent.hpp"

using namespace qf::adf;

namespace {

using qf::Json;

constexpr Nat kH = 1500;

FamilyGenerator gen_of(FamilyKind kind, Nat count = 0, Nat depth = 4) {
  FamilyGenerator g;
  g.kind = kind;
  g.count = count;
  g.depth = depth;
  return g;
}

// Brute membership from the raw description, independent of CertSet.
bool raw_member(const std::vector<Progression>& ps, const std::vector<Nat>& add, const std::vector<Nat>& rm,
                Nat x) {
  if (std::find(add.begin(), add.end(), x) != add.end()) return true;
  bool in = false;
  for (const auto& p : ps) in = in || (x >= p.a && (x - p.a) % p.d == 0);
  return in && std::find(rm.begin(), rm.end(), x) == rm.end();
}

struct RawSet {
  std::vector<Progression> ps;
  std::vector<Nat> add, rm;
  CertSet set() const { return CertSet(ps, add, rm); }
  bool has(Nat x) const { return raw_member(ps, add, rm, x); }
};

RawSet random_raw(std::mt19937_64& rng) {
  std::uniform_int_distribution<Nat> mod_d(1, 12), small(0, 40);
  RawSet r;
  const Nat m = mod_d(rng);
  std::vector<Nat> residues(m);
  std::iota(residues.begin(), residues.end(), 0);
  std::shuffle(residues.begin(), residues.end(), rng);
  const Nat k = std::uniform_int_distribution<Nat>(0, std::min<Nat>(m, 3))(rng);
  for (Nat i = 0; i < k; ++i) {
    // Residue class mod m with a delayed start, kept disjoint from the others.
    r.ps.push_back({residues[i] + m * std::uniform_int_distribution<Nat>(0, 3)(rng), m});
  }
  for (int i = 0; i < 3; ++i) {
    Nat x = small(rng);
    if (!raw_member(r.ps, {}, {}, x)) r.add.push_back(x);
  }
  for (int i = 0; i < 3; ++i) {
    Nat x = small(rng);
    if (raw_member(r.ps, {}, {}, x)) r.rm.push_back(x);
  }
  return r;
}

}  // namespace

TEST(Progressions, IntersectionMatchesBruteForce) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Nat> a(0, 30), d(1, 18);
  for (int t = 0; t < 500; ++t) {
    Progression p{a(rng), d(rng)}, q{a(rng), d(rng)};
    auto r = intersect(p, q);
    for (Nat x = 0; x < 2000; ++x) {
      bool both = p.contains(x) && q.contains(x);
      ASSERT_EQ(both, r && r->contains(x)) << p.a << "+" << p.d << "k vs " << q.a << "+" << q.d << "k at " << x;
    }
  }
}

TEST(CertSetAlgebra, BooleanOpsMatchBruteForce) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 300; ++t) {
    RawSet ra = random_raw(rng), rb = random_raw(rng);
    CertSet a = ra.set(), b = rb.set();
    CertSet i = a & b, u = a | b, m = a - b, c = a.complement();
    for (Nat x = 0; x < 600; ++x) {
      ASSERT_EQ(a.contains(x), ra.has(x));
      ASSERT_EQ(i.contains(x), ra.has(x) && rb.has(x));
      ASSERT_EQ(u.contains(x), ra.has(x) || rb.has(x));
      ASSERT_EQ(m.contains(x), ra.has(x) && !rb.has(x));
      ASSERT_EQ(c.contains(x), !ra.has(x));
    }
  }
}

TEST(CertSetAlgebra, CountingAndEnumeration) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    CertSet s = random_raw(rng).set();
    std::vector<Nat> brute;
    for (Nat x = 0; x < kH; ++x)
      if (s.contains(x)) brute.push_back(x);
    for (Nat x = 0; x < 200; ++x)
      ASSERT_EQ(s.count_below(x), std::lower_bound(brute.begin(), brute.end(), x) - brute.begin());
    const Nat n = std::min<Nat>(30, brute.size());
    auto firsts = s.first(n);
    for (Nat k = 0; k < n; ++k) {
      ASSERT_EQ(s.nth(k), brute[k]);
      ASSERT_EQ(firsts[k], brute[k]);
    }
    EXPECT_EQ(s.infinite(), brute.size() > 100);
  }
}

TEST(CertSetAlgebra, AffineImage) {
  CertSet s({{1, 3}}, {0}, {4});
  CertSet img = s.affine_image(2, 5);
  for (Nat x = 0; x < 300; ++x) EXPECT_EQ(img.contains(2 * x + 5), s.contains(x));
  EXPECT_FALSE(img.contains(6));
}

TEST(CertSetAlgebra, JsonRoundTrip) {
  CertSet s({{2, 4}, {3, 8}}, {1}, {6});
  auto j = cert_set_json(s);
  EXPECT_EQ(j["progressions"], Json::parse("[[2,4],[3,8]]"));
  EXPECT_EQ(j["add"], Json::parse("[1]"));
  EXPECT_EQ(j["remove"], Json::parse("[6]"));
  EXPECT_TRUE(cert_set_from(j).same_as(s));
}

TEST(CertSetAlgebra, ResidueSystemsMerge) {
  CertSet s = CertSet::progression(0, 4) | CertSet::progression(2, 4);
  ASSERT_EQ(s.progressions().size(), 1u);
  EXPECT_EQ(s.progressions()[0], (Progression{0, 2}));
}

TEST(AlmostDisjoint, Examples) {
  auto evens = CertSet::progression(0, 2), odds = CertSet::progression(1, 2);
  auto c = almost_disjoint_check(evens, odds);
  EXPECT_TRUE(c.holds);
  EXPECT_TRUE(c.exceptions.empty());
  auto d = almost_disjoint_check(evens, CertSet::progression(0, 4));
  EXPECT_FALSE(d.holds);
  ASSERT_TRUE(d.witness);
  EXPECT_EQ(*d.witness, (Progression{0, 4}));
  auto v1 = CertSet::progression(2, 4), v2 = CertSet::progression(4, 8);
  EXPECT_TRUE(almost_disjoint_check(v1, v2).holds);
  EXPECT_TRUE(almost_disjoint_check(v1, v2).exceptions.empty());
}

TEST(AlmostRelations, CertificatesReplay) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    CertSet a = random_raw(rng).set(), b = random_raw(rng).set();
    auto eq = almost_equal(a, b);
    if (eq.holds) {
      std::set<Nat> exc(eq.exceptions.begin(), eq.exceptions.end());
      for (Nat x = 0; x < 800; ++x) {
        if (!exc.count(x)) { ASSERT_EQ(a.contains(x), b.contains(x)); }
      }
    } else {
      ASSERT_TRUE(eq.witness);
      for (Nat k = 0; k < 20; ++k) {
        Nat x = eq.witness->nth(k);
        ASSERT_NE(a.contains(x), b.contains(x));
      }
    }
    auto sub = almost_subset(a, b);
    if (!sub.holds) continue;
    for (Nat x = 0; x < 800; ++x) {
      if (a.contains(x) && !b.contains(x)) {
        ASSERT_TRUE(std::binary_search(sub.exceptions.begin(), sub.exceptions.end(), x));
      }
    }
  }
}

TEST(Ordinals, ParseAndPrint) {
  EXPECT_EQ(parse_ordinal("w*2+3"), (Ordinal{0, 2, 3}));
  EXPECT_EQ(parse_ordinal("ω·4"), (Ordinal{0, 4, 0}));
  EXPECT_EQ(parse_ordinal("w^2+w+1"), (Ordinal{1, 1, 1}));
  EXPECT_EQ(parse_ordinal("7"), Ordinal::finite(7));
  EXPECT_EQ((Ordinal{1, 0, 5}).str(), "w^2+5");
  EXPECT_EQ((Ordinal{0, 3, 0}).str(), "w*3");
  EXPECT_THROW(parse_ordinal("3+w"), qf::ParseError);
  EXPECT_LT(Ordinal::finite(100), Ordinal::omega_times(1));
}

TEST(Ordinals, FundamentalSequences) {
  Ordinal w2 = Ordinal::omega_times(2);
  EXPECT_EQ(w2.fundamental(0), Ordinal{});
  EXPECT_EQ(w2.fundamental(3), Ordinal::omega_times(1, 3));
  Ordinal ww{1, 0, 0};
  EXPECT_EQ(ww.fundamental(2), Ordinal::omega_times(2));
  for (Nat n = 1; n < 10; ++n) EXPECT_LT(w2.fundamental(n - 1), w2.fundamental(n));
}

TEST(Injections, RuleLevelInjectivity) {
  auto evens = CertSet::progression(0, 2), odds = CertSet::progression(1, 2);
  AffineInjection bad({{evens, 1, 0}, {odds, 1, 1}}, {});
  EXPECT_FALSE(bad.injectivity().ok);
  AffineInjection good({{evens, 2, 0}, {odds, 2, 1}}, {});
  EXPECT_TRUE(good.injectivity().ok);
  EXPECT_FALSE(good.overridden({{3, 4}}).injectivity().ok);
  EXPECT_TRUE(good.overridden({{3, 4}, {2, 7}}).injectivity().ok);
}

TEST(Injections, DifferencesAreExact) {
  auto n = CertSet::naturals();
  auto g = AffineInjection::affine(n, 2, 0);
  auto f = g.overridden({{5, 99}, {7, 14}});
  auto d = differences(f, g, n);
  ASSERT_TRUE(d.holds);
  EXPECT_EQ(d.exceptions, std::vector<Nat>{5});
  auto h = AffineInjection::affine(n, 2, 1);
  EXPECT_FALSE(differences(h, g, n).holds);
  auto piece = AffineInjection({{CertSet::range(0, 4), 3, 0}, {CertSet::progression(4, 1), 2, 0}}, {});
  auto e = differences(piece, g, n);
  ASSERT_TRUE(e.holds);
  EXPECT_EQ(e.exceptions, (std::vector<Nat>{1, 2, 3}));
}

namespace {

// Pointwise replay of the four nice-ext clauses on B cap [0, h).
void replay_nice_ext(const NiceExtInput& in, const NiceExtResult& out, Nat h = 400) {
  std::set<Nat> values;
  std::set<Nat> exc(out.exceptions.begin(), out.exceptions.end());
  for (Nat x = 0; x < h; ++x) {
    if (!in.b.contains(x)) {
      ASSERT_FALSE(out.h(x).has_value());
      continue;
    }
    auto y = out.h(x);
    ASSERT_TRUE(y);
    ASSERT_TRUE(values.insert(*y).second) << "h repeats " << *y;
    ASSERT_TRUE(in.c.contains(*y));
    if (in.a.contains(x)) { ASSERT_EQ(y, in.f(x)); }
    if (!exc.count(x)) { ASSERT_EQ(y, in.g(x)); }
  }
  for (Nat y : in.F) {
    auto x = out.h.preimage(y);
    ASSERT_TRUE(x);
    ASSERT_EQ(out.h(*x), y);
  }
}

}  // namespace

TEST(NiceExt, EvensIntoNaturalsCoversOne) {
  NiceExtInput in;
  in.a = CertSet::progression(0, 2);
  in.b = CertSet::naturals();
  in.c = CertSet::naturals();
  in.g = AffineInjection::affine(in.b, 2, 0);
  in.f = in.g.restricted(in.a);
  in.F = {1};
  auto out = nice_ext(in);
  EXPECT_EQ(out.d3, std::vector<Nat>{1});
  EXPECT_EQ(out.h(1), 1);
  EXPECT_TRUE(verify_nice_ext(in, out).ok());
  replay_nice_ext(in, out);
}

TEST(NiceExt, EmptyFKeepsG) {
  NiceExtInput in;
  in.a = CertSet::progression(0, 2);
  in.b = CertSet::naturals();
  in.c = CertSet::naturals();
  in.g = AffineInjection::affine(in.b, 2, 0);
  in.f = in.g.restricted(in.a);
  auto out = nice_ext(in);
  EXPECT_TRUE(out.exceptions.empty());
  EXPECT_TRUE(differences(out.h, in.g, in.b).exceptions.empty());
  EXPECT_TRUE(verify_nice_ext(in, out).ok());
}

TEST(NiceExt, FiniteComplementOfRangeIsRejected) {
  NiceExtInput in;
  in.a = CertSet::progression(0, 2);
  in.b = CertSet::naturals();
  in.g = AffineInjection::affine(in.b, 1, 0);
  in.c = CertSet::naturals();
  in.f = in.g.restricted(in.a);
  try {
    nice_ext(in);
    FAIL() << "expected hypothesis (5) failure";
  } catch (const HypothesisViolated& e) {
    EXPECT_EQ(e.number(), 5);
    EXPECT_NE(std::string(e.what()).find("hypothesis (5) violated"), std::string::npos);
  }
}

TEST(NiceExt, RandomInstancesPassVerifier) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 120; ++t) {
    auto in = random_nice_ext_instance(rng);
    ASSERT_NO_THROW(check_nice_ext_hypotheses(in)) << nice_ext_input_json(in).dump();
    auto out = nice_ext(in);
    auto check = verify_nice_ext(in, out);
    ASSERT_TRUE(check.ok()) << check.json().dump() << "\n" << nice_ext_input_json(in).dump();
    replay_nice_ext(in, out);
    std::set<Nat> d3(out.d3.begin(), out.d3.end());
    for (Nat x : out.d1) EXPECT_TRUE(d3.count(x));
    for (Nat x : out.d2) EXPECT_TRUE(d3.count(x));
    EXPECT_GE(out.d3.size(), in.F.size());
  }
}

TEST(NiceExt, MutantsTriggerEachHypothesis) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 20; ++t) {
    auto in = random_nice_ext_instance(rng);
    for (int k = 1; k <= 7; ++k) {
      auto bad = nice_ext_mutant(in, k);
      try {
        nice_ext(bad);
        FAIL() << "mutant " << k << " accepted";
      } catch (const HypothesisViolated& e) {
        EXPECT_EQ(e.number(), k) << e.what();
      }
    }
  }
}

TEST(NiceExt, JsonRoundTrip) {
  std::mt19937_64 rng(3);
  auto in = random_nice_ext_instance(rng);
  auto back = nice_ext_input_from(nice_ext_input_json(in));
  EXPECT_EQ(nice_ext_input_json(back), nice_ext_input_json(in));
}

TEST(Families, ProgressionIsValuationClasses) {
  auto fam = make_family(gen_of(FamilyKind::Progression, 3));
  ASSERT_EQ(fam.sets.size(), 3u);
  for (Nat b = 0; b < 3; ++b)
    for (Nat x = 1; x < 500; ++x) EXPECT_EQ(fam.sets[b].contains(x), __builtin_ctzll(x) == b);
  EXPECT_TRUE(fam.almost_disjoint());
}

TEST(Families, BranchIntersectionsBoundedByDepth) {
  auto fam = make_family(gen_of(FamilyKind::Branch, 4, 4));
  ASSERT_EQ(fam.sets.size(), 4u);
  EXPECT_TRUE(fam.almost_disjoint());
  for (const auto& pc : fam.pairwise) {
    EXPECT_LE(pc.cert.exceptions.size(), 4u);
    std::set<Nat> brute;
    for (Nat x = 0; x < 4000; ++x)
      if (fam.sets[pc.i].contains(x) && fam.sets[pc.j].contains(x)) brute.insert(x);
    EXPECT_EQ(std::vector<Nat>(brute.begin(), brute.end()), pc.cert.exceptions);
  }
}

TEST(Families, LuzinInvariant) {
  FamilyGenerator gen = gen_of(FamilyKind::Luzin, 200);
  gen.horizon = 64;
  auto fam = make_family(gen);
  ASSERT_TRUE(fam.luzin);
  EXPECT_TRUE(fam.luzin->ok);
  EXPECT_TRUE(fam.almost_disjoint());
  for (Nat n = 0; n <= 64; ++n) EXPECT_LE(fam.luzin->worst[n], fam.luzin->bound[n]);
}

TEST(Families, CapsEnforced) {
  EXPECT_THROW(make_family(gen_of(FamilyKind::Branch, 40, 5)), ParameterCap);
  EXPECT_THROW(make_family(gen_of(FamilyKind::Luzin, 5000)), ParameterCap);
}

TEST(Separation, Examples) {
  auto evens = CertSet::progression(0, 2), odds = CertSet::progression(1, 2);
  auto s = separation_find({evens}, {odds});
  EXPECT_TRUE(s.v.same_as(evens));
  EXPECT_TRUE(s.ok());
  EXPECT_TRUE(s.inside[0].exceptions.empty());
  EXPECT_TRUE(s.outside[0].exceptions.empty());
  auto v1 = CertSet::progression(2, 4);
  auto t = separation_find({v1}, {CertSet::progression(4, 8), CertSet::progression(8, 16)});
  EXPECT_TRUE(t.v.same_as(v1));
  EXPECT_THROW(separation_find({evens}, {CertSet::progression(0, 4)}), NotFound);
}

TEST(Separation, LuzinSubfamilies) {
  auto fam = make_family(gen_of(FamilyKind::Luzin, 40));
  std::mt19937_64 rng(9);
  std::vector<std::size_t> idx(40);
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  std::vector<CertSet> bs, cs;
  for (int i = 0; i < 6; ++i) bs.push_back(fam.sets[idx[i]]);
  for (int i = 6; i < 12; ++i) cs.push_back(fam.sets[idx[i]]);
  auto s = separation_find(bs, cs);
  ASSERT_TRUE(s.ok());
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (Nat x = 0; x < 3000; ++x)
      if (bs[i].contains(x) && !s.v.contains(x)) {
        ASSERT_TRUE(std::binary_search(s.inside[i].exceptions.begin(), s.inside[i].exceptions.end(), x));
      }
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (Nat x = 0; x < 3000; ++x)
      if (cs[i].contains(x) && s.v.contains(x)) {
        ASSERT_TRUE(std::binary_search(s.outside[i].exceptions.begin(), s.outside[i].exceptions.end(), x));
      }
}

TEST(Chains, SuccessorOnlyIsExactUnion) {
  auto fam = make_family(gen_of(FamilyKind::Progression, 8));
  Chain chain(fam);
  for (Nat a = 0; a <= 8; ++a) {
    CertSet u;
    for (Nat b = 0; b < a; ++b) u = u | fam.sets[b];
    EXPECT_TRUE(chain.v(Ordinal::finite(a)).same_as(u));
  }
  bool ok = false;
  chain.verify({Ordinal::finite(3), Ordinal::finite(8)}, &ok);
  EXPECT_TRUE(ok);
}

TEST(Chains, LimitByTwoBlockSeparation) {
  FamilyGenerator gen = gen_of(FamilyKind::Progression, 16);
  gen.blocks = 2;
  auto uniform = make_family(gen);
  Family listed = uniform;
  listed.blocks = 0;  // forces the separation route at w
  Chain chain(listed);
  const Ordinal w = Ordinal::omega_times(1);
  bool ok = false;
  chain.verify({w, Ordinal::omega_times(1, 3)}, &ok);
  EXPECT_TRUE(ok);
  Chain closed(uniform);
  for (Nat x = 0; x < 2000; ++x)
    for (std::size_t i = 0; i < 8; ++i)
      if (listed.sets[i].contains(x)) {
        EXPECT_TRUE(chain.v(w).contains(x));
        EXPECT_TRUE(closed.v(w).contains(x));
      }
}

TEST(Chains, SingleSet) {
  auto fam = make_family(gen_of(FamilyKind::Progression, 1));
  Chain chain(fam);
  EXPECT_TRUE(chain.v(Ordinal::finite(1)).same_as(fam.sets[0]));
}

TEST(Coherent, SuccessorEnumeratesMember) {
  FamilyGenerator gen = gen_of(FamilyKind::Explicit);
  gen.sets = {CertSet::progression(0, 2)};
  CoherentFamily cf(make_family(gen), Ordinal::finite(2));
  for (Nat j = 0; j < 50; ++j) EXPECT_EQ(cf.eval(Ordinal::finite(1), {Ordinal{}, j}), 2 * j);
  EXPECT_TRUE(cf.w(Ordinal::finite(1)).same_as(CertSet::progression(0, 2)));
}

TEST(Coherent, SuccessorRangesAreW) {
  CoherentFamily cf(make_family(gen_of(FamilyKind::Progression, 8)), Ordinal::omega_times(1));
  const Ordinal four = Ordinal::finite(4);
  std::set<Nat> values;
  for (Nat xi = 0; xi < 4; ++xi)
    for (Nat j = 0; j < 100; ++j) {
      auto y = cf.eval(four, {Ordinal::finite(xi), j});
      ASSERT_TRUE(y);
      EXPECT_TRUE(values.insert(*y).second);
      EXPECT_TRUE(cf.w(four).contains(*y));
      EXPECT_EQ(cf.preimage(four, *y), (Position{Ordinal::finite(xi), j}));
    }
  for (Nat xi = 0; xi < 8; ++xi)
    EXPECT_TRUE(cf.derived(Ordinal::finite(xi)).same_as(make_family(gen_of(FamilyKind::Progression, 8)).sets[xi]));
}

TEST(Coherent, LimitAtOmegaOnSample) {
  CoherentFamily cf(make_family(gen_of(FamilyKind::Progression, 8)), Ordinal::omega_times(1, 1));
  const Ordinal w = Ordinal::omega_times(1);
  std::set<Nat> values;
  for (Nat xi = 0; xi < 20; ++xi)
    for (Nat j = 0; j < 500; ++j) {
      Position p{Ordinal::finite(xi), j};
      auto y = cf.eval(w, p);
      ASSERT_TRUE(y);
      ASSERT_TRUE(values.insert(*y).second);
      ASSERT_TRUE(cf.w(w).contains(*y));
      ASSERT_EQ(cf.preimage(w, *y), p);
    }
  EXPECT_EQ(values.size(), 10000u);
}

TEST(Coherent, LimitCoherenceWithStageThree) {
  CoherentFamily cf(make_family(gen_of(FamilyKind::Progression, 8)), Ordinal::omega_times(1, 1));
  const Ordinal w = Ordinal::omega_times(1), three = Ordinal::finite(3);
  const auto& exc = cf.exceptions(three, w);
  std::set<Position> e(exc.begin(), exc.end());
  for (Nat xi = 0; xi < 3; ++xi)
    for (Nat j = 0; j < 2000; ++j) {
      Position p{Ordinal::finite(xi), j};
      EXPECT_EQ(cf.eval(w, p) != cf.eval(three, p), e.count(p) > 0);
    }
  EXPECT_TRUE(cf.exceptions(Ordinal::finite(2), three).empty());
}

TEST(Coherent, SigmaCoverageAtFifty) {
  CoherentFamily cf(make_family(gen_of(FamilyKind::Progression, 8)), Ordinal::omega_times(1, 1));
  const Ordinal w = Ordinal::omega_times(1);
  cf.step(w, 50);
  for (Nat y : cf.w(w).first(50)) {
    auto x = cf.preimage(w, y);
    ASSERT_TRUE(x);
    EXPECT_EQ(cf.eval(w, *x), y);
  }
}

TEST(Coherent, IsoChainTwoBlocks) {
  FamilyGenerator gen = gen_of(FamilyKind::Progression, 8);
  gen.blocks = 2;
  auto rep = iso_chain(make_family(gen), {Ordinal::omega_times(2), 20});
  EXPECT_EQ(rep.failures, 0) << rep.json().dump();
  EXPECT_GE(rep.family->steps_built(Ordinal::omega_times(1)), 1);
}

TEST(Coherent, IsoChainSuccessorOnlyRecoversMembers) {
  auto fam = make_family(gen_of(FamilyKind::Progression, 8));
  auto rep = iso_chain(fam, {Ordinal::omega_times(1), 20});
  EXPECT_EQ(rep.failures, 0);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_TRUE(rep.family->derived(fam.index[i]).same_as(fam.sets[i]));
}

TEST(Coherent, IsoChainEmptyFamily) {
  auto rep = iso_chain(make_family(gen_of(FamilyKind::Explicit)), {Ordinal::omega_times(2), 10});
  EXPECT_TRUE(rep.stages.empty());
  EXPECT_EQ(rep.failures, 0);
}

TEST(BooleanMono, LawsOnSixIndices) {
  FamilyGenerator gen = gen_of(FamilyKind::Progression, 8);
  gen.blocks = 2;
  CoherentFamily cf(make_family(gen), Ordinal::omega_times(2));
  std::vector<Ordinal> base{Ordinal::finite(0), Ordinal::finite(1), Ordinal::finite(2),
                            Ordinal::omega_times(1, 0), Ordinal::omega_times(1, 1), Ordinal::omega_times(1, 2)};
  auto r = verify_boolean_laws(cf, base);
  EXPECT_EQ(r.failures, 0);
  EXPECT_EQ(r.pairs, 6 + 64 * 64);
}

TEST(BooleanMono, SingletonsAndDisjointPairs) {
  CoherentFamily cf(make_family(gen_of(FamilyKind::Progression, 8)), Ordinal::omega_times(1, 1));
  auto h0 = boolean_mono(cf, {{Ordinal::finite(0)}});
  EXPECT_TRUE(almost_equal(h0, cf.family().member(Ordinal::finite(0))).holds);
  auto h1 = boolean_mono(cf, {{Ordinal::finite(1), Ordinal::finite(3)}});
  EXPECT_TRUE(almost_disjoint(h0, h1).holds);
  auto h13 = boolean_mono(cf, {{Ordinal::finite(0), Ordinal::finite(1), Ordinal::finite(3)}});
  EXPECT_TRUE(almost_subset(h1, h13).holds);
  auto co = boolean_mono(cf, {{Ordinal::finite(0)}, true});
  EXPECT_TRUE(almost_disjoint(co, h0).holds);
}

TEST(Separators, FromEmbedding) {
  CoherentFamily cf(make_family(gen_of(FamilyKind::Progression, 8)), Ordinal::omega_times(1));
  auto s = separator_from_embedding(cf, {Ordinal::finite(0), Ordinal::finite(2)});
  EXPECT_TRUE(s.ok());
  auto single = separator_from_embedding(cf, {Ordinal::finite(0)});
  EXPECT_TRUE(almost_equal(single.v, cf.family().sets[0]).holds);
  auto none = separator_from_embedding(cf, {});
  EXPECT_TRUE(none.v.empty());
}

TEST(MadCensus, Examples) {
  auto fam = make_family(gen_of(FamilyKind::Progression, 3));
  auto all = mad_census(fam.sets, CertSet::naturals());
  EXPECT_FALSE(all.residual.holds);
  for (const auto& e : all.entries) EXPECT_FALSE(e.meet.holds);
  auto a0 = mad_census(fam.sets, fam.sets[0]);
  EXPECT_TRUE(a0.residual.holds);
  EXPECT_FALSE(a0.entries[0].meet.holds);
  EXPECT_TRUE(a0.entries[1].meet.holds);
  EXPECT_TRUE(a0.entries[2].meet.holds);
  auto two = (fam.sets[0] | fam.sets[1]) - CertSet::finite({1, 2, 6});
  auto c = mad_census(fam.sets, two);
  EXPECT_TRUE(c.residual.holds);
  EXPECT_TRUE(c.residual.exceptions.empty());
  EXPECT_TRUE(c.entries[2].meet.holds);
}
