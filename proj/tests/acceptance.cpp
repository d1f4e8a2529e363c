#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "qf/adf/coherent.hpp"
#include "qf/adf/nice_ext.hpp"
#include "qf/cli/commands.hpp"
#include "qf/quotient/windows.hpp"
#include "support.hpp"

using namespace qf;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failed = 0;

void criterion(int number, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = s < limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failed;
  std::printf("%s criterion %d: %s | %s | %.3f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", number, title.c_str(),
              o.detail.c_str(), s, limit_s, in_time ? "" : " over time");
  std::fflush(stdout);
}

// 1. op_norm_inf against the maximum over sign vectors.
Outcome op_norm_oracle() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<Index> dim(1, 6);
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    const RMatrix m = test::random_matrix(rng, dim(rng), dim(rng));
    if (op_norm_inf(m) != test::sign_vector_norm(m)) ++bad;
  }
  return {bad == 0, "200 matrices, " + std::to_string(bad) + " mismatches"};
}

// 2. Hahn-Banach value against vertex enumeration of the unit ball.
Outcome hahn_banach_oracle() {
  std::mt19937_64 rng(kSeed + 2);
  int done = 0, bad = 0;
  while (done < 100) {
    const Index n = 1 + static_cast<Index>(rng() % 5);
    const Index h = 1 + static_cast<Index>(rng() % std::min<Index>(n, 3));
    std::vector<WindowVector> basis;
    std::vector<std::vector<Rational>> rows;
    for (Index k = 0; k < h; ++k) {
      basis.emplace_back(0, test::random_vector(rng, n));
      rows.push_back(basis.back().coords());
    }
    if (rank(rows, n) < static_cast<std::size_t>(h)) continue;
    const geom::Subspace y({0, n}, basis);
    const auto phi = test::random_vector(rng, h);
    const geom::HahnBanach hb = geom::hahn_banach_extend(y, phi);
    bool ok = hb.u.l1_norm() == hb.norm && hb.norm == geom::dual_norm_vertex(y, phi);
    for (Index k = 0; k < h; ++k) ok = ok && hb.u.dot(basis[k]) == phi[k];
    bad += !ok;
    ++done;
  }
  return {bad == 0, "100 subspaces, " + std::to_string(bad) + " mismatches"};
}

// 3. Extension pipeline on near-indicator instances; the JSON is returned for the determinism check.
Json extension_suite(int* verified) {
  std::mt19937_64 rng(kSeed + 3);
  Json out = Json::array();
  *verified = 0;
  for (int t = 0; t < 50; ++t) {
    const auto inst = test::extension_instance(rng);
    Json rec{{"T", geom::linmap_json(inst.t)}};
    try {
      const geom::Extension e = geom::extend_isomorphism(inst.t, std::nullopt, std::nullopt, geom::ExtensionConfig{});
      const geom::ExtensionCheck c = geom::verify_extension(inst.t, e.w, 64);
      rec["report"] = e.report();
      rec["W"] = matrix_sparse_json(e.w);
      rec["verified"] = c.ok();
      *verified += c.ok();
    } catch (const std::exception& ex) {
      rec["error"] = ex.what();
    }
    out.push_back(rec);
  }
  return out;
}

Outcome extension_pipeline() {
  int verified = 0;
  extension_suite(&verified);
  return {verified == 50, std::to_string(verified) + "/50 verified"};
}

// 4. Lifting and restriction windows against sampled combinations.
Outcome windows_spot_check() {
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_int_distribution<int> entry(-4, 4), coin(0, 2);
  int spans = 0, violations = 0;
  const Rational eps(1, 10);
  while (spans < 50) {
    const Index dim = 1 + static_cast<Index>(rng() % 3);
    std::vector<quotient::TailVector> fs;
    for (Index k = 0; k < dim; ++k) {
      std::vector<Rational> pre(rng() % 7), per(1 + rng() % 4);
      for (auto& x : pre) x = coin(rng) ? Rational(entry(rng)) : Rational(0);
      for (auto& x : per) x = Rational(entry(rng), 1 + static_cast<long>(rng() % 2));
      for (auto& x : per) x.canonicalize();
      fs.emplace_back(pre, per);
    }
    const quotient::TailSpan s = quotient::make_span(fs);
    if (!quotient::pi_injective(s)) continue;
    ++spans;
    const quotient::LiftWindow lift = quotient::lifting_index(s, eps);
    const quotient::LiftWindow restr = quotient::restriction_index(s, eps);
    for (int t = 0; t < 500; ++t) {
      quotient::TailVector y({}, {Rational(0)});
      for (const auto& f : fs) y = y + f * test::random_rational(rng);
      if ((1 - eps) * y.tail_sup_norm(lift.n) > quotient::quotient_norm(y)) ++violations;
      Rational head = 0;
      for (Index i = 0; i < restr.n; ++i) head = std::max(head, rabs(y.at(i)));
      if ((1 - eps) * y.sup_norm() > head) ++violations;
    }
  }
  return {violations == 0, "50 spans x 500 samples x 2 forms, " + std::to_string(violations) + " violations"};
}

// 5. nice-ext postconditions and the seven hypothesis errors.
Outcome nice_ext_suite() {
  std::mt19937_64 rng(kSeed + 5);
  int ok = 0;
  std::set<int> triggered;
  for (int t = 0; t < 200; ++t) {
    const adf::NiceExtInput in = adf::random_nice_ext_instance(rng);
    const adf::NiceExtResult out = adf::nice_ext(in);
    ok += adf::verify_nice_ext(in, out).ok();
    if (t < 20)
      for (int k = 1; k <= 7; ++k) {
        try {
          adf::nice_ext(adf::nice_ext_mutant(in, k));
        } catch (const adf::HypothesisViolated& e) {
          if (e.number() == k) triggered.insert(k);
        }
      }
  }
  return {ok == 200 && triggered.size() == 7,
          std::to_string(ok) + "/200 verified, " + std::to_string(triggered.size()) + "/7 hypothesis errors"};
}

// 6. Coherent family to w*2 over eight members, Boolean laws and separators.
Outcome coherent_suite() {
  adf::FamilyGenerator g;
  g.kind = adf::FamilyKind::Progression;
  g.count = 8;
  g.blocks = 2;
  const adf::Family fam = adf::make_family(g);
  adf::IsoChainConfig cfg;
  cfg.cap = adf::Ordinal::omega_times(2);
  const adf::IsoChainReport rep = adf::iso_chain(fam, cfg);
  std::vector<adf::Ordinal> base(fam.index.begin(), fam.index.begin() + 6);
  const adf::LawReport laws = adf::verify_boolean_laws(*rep.family, base);
  std::set<adf::Ordinal> f{fam.index[0], fam.index[2], fam.index[5]}, rest;
  for (const auto& xi : fam.index)
    if (!f.count(xi)) rest.insert(xi);
  const bool sep = adf::separator_from_embedding(*rep.family, f).ok() &&
                   adf::separator_from_embedding(*rep.family, rest).ok();
  return {rep.failures == 0 && laws.failures == 0 && sep,
          "iso_chain failures " + std::to_string(rep.failures) + " over " + std::to_string(rep.pairwise.size()) +
              " intersections and " + std::to_string(rep.coherence.size()) + " coherence pairs, law pairs " + std::to_string(laws.pairs) +
              " with " + std::to_string(laws.failures) + " failures, separators " + (sep ? "ok" : "failed")};
}

// 7. forge-matrix on kappa = 8, branch to progression.
cli::Output forge_branch8() {
  cli::RunConfig cfg;
  cfg.horizon = 512;
  cfg.seed = kSeed;
  return cli::cmd_forge(forcing::branch_to_progression(8, cfg.rho), cfg);
}

Outcome forcing_end_to_end() {
  const cli::Output out = forge_branch8();
  const Json& rep = out.result.at("report");
  bool symbolic = true;
  for (const auto& [xi, s] : rep.at("symbolic_tail").items()) symbolic = symbolic && s.get<bool>();
  const bool ok = out.failures == 0 && rep.at("indices") == 8 && out.result.at("layout").back() >= 512;
  return {ok, "failures " + std::to_string(out.failures) + ", blocks " + rep.at("blocks").dump() + ", max norm " +
                  rep.at("max_block_norm").get<std::string>() + ", max inverse norm " +
                  rep.at("max_inverse_norm").get<std::string>() + ", symbolic tails " + (symbolic ? "all" : "partial")};
}

// 8. Random same-stem pairs amalgamate.
Outcome linked_pairs() {
  using namespace forcing;
  const PairedFamilies fam = branch_to_progression(8);
  ForcingConfig cfg;
  cfg.horizon = 128;
  const GenericRun run = run_generic(fam, default_schedule(fam, 128), cfg);
  std::vector<Condition> stems;
  for (const auto& c : run.chain)
    if (c.n >= 8) stems.push_back(Condition{c.n, c.blocks, {}});
  std::mt19937_64 rng(kSeed + 8);
  int ok = 0;
  for (int t = 0; t < 50; ++t) {
    const Condition& stem = stems[rng() % stems.size()];
    auto subset = [&] {
      std::vector<Index> a;
      for (Index xi = 0; xi < 8; ++xi)
        if (rng() % 3 == 0) a.push_back(xi);
      return a;
    };
    const Condition p{stem.n, stem.blocks, subset()}, q{stem.n, stem.blocks, subset()};
    if (!validate_condition(p, fam, cfg).empty() || !validate_condition(q, fam, cfg).empty()) continue;
    const Condition r = amalgamate(p, q, static_cast<Index>(rng() % 64), fam, cfg);
    ok += cond_leq(r, p, fam).holds && cond_leq(r, q, fam).holds && validate_condition(r, fam, cfg).empty();
  }
  return {ok == 50, std::to_string(ok) + "/50 verified r <= p, q"};
}

// 9. Criteria 3 and 7 repeated with the same seed.
Outcome determinism() {
  int v1 = 0, v2 = 0;
  const bool ext = extension_suite(&v1).dump() == extension_suite(&v2).dump();
  cli::RunConfig cfg;
  cfg.seed = kSeed;
  const bool forge = forge_branch8().document(cfg).dump() == forge_branch8().document(cfg).dump();
  return {ext && forge, std::string("extension suite ") + (ext ? "identical" : "differs") + ", forge run " +
                            (forge ? "identical" : "differs")};
}

}  // namespace

int main() {
  criterion(1, "operator norm equals sign-vector oracle", 5, op_norm_oracle);
  criterion(2, "Hahn-Banach norm preservation", 30, hahn_banach_oracle);
  criterion(3, "extension pipeline", 60, extension_pipeline);
  criterion(4, "lifting and restriction windows", 30, windows_spot_check);
  criterion(5, "nice-ext postconditions and hypothesis errors", 20, nice_ext_suite);
  criterion(6, "coherent family and Boolean monomorphism", 60, coherent_suite);
  criterion(7, "forcing end to end", 120, forcing_end_to_end);
  criterion(8, "same-stem compatibility", 60, linked_pairs);
  criterion(9, "determinism", 180, determinism);
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
