#include "qf/forcing/run.hpp"

#include <algorithm>

#include "qf/quotient/windows.hpp"

namespace qf::forcing {

std::string DenseSet::name() const { return std::string(1, kind) + "_" + std::to_string(value); }

DenseSet dense_set_from(const std::string& s) {
  if (s.size() < 2 || (s[0] != 'D' && s[0] != 'E')) throw ParseError("dense set must look like D_8 or E_3: " + s);
  std::size_t at = s[1] == '_' ? 2 : 1;
  std::size_t used = 0;
  Index v = 0;
  try {
    v = std::stoll(s.substr(at), &used);
  } catch (const std::exception&) {
    throw ParseError("dense set must look like D_8 or E_3: " + s);
  }
  if (at + used != s.size() || v < 0) throw ParseError("dense set must look like D_8 or E_3: " + s);
  return {s[0], v};
}

std::vector<DenseSet> default_schedule(const PairedFamilies& fam, Index horizon) {
  std::vector<DenseSet> out;
  for (Index xi : fam.index) out.push_back({'E', xi});
  for (Index n = 1; n < horizon; n *= 2) out.push_back({'D', n});
  if (horizon > 0) out.push_back({'D', horizon});
  return out;
}

Json RunReport::json() const {
  Json sym = Json::object();
  for (const auto& [xi, s] : symbolic_tail) sym[std::to_string(xi)] = s;
  return Json{{"ok", ok()},
              {"failures", failures},
              {"chain_steps", chain_steps},
              {"blocks", blocks},
              {"indices", indices},
              {"rows", rows},
              {"max_block_norm", rational_json(max_norm)},
              {"max_inverse_norm", rational_json(max_inverse_norm)},
              {"symbolic_tail", sym}};
}

Json GenericRun::json() const {
  Json sched = Json::array(), chain_j = Json::array(), hits_j = Json::array(), entry_j = Json::array();
  Json blocks = Json::array();
  for (const auto& d : schedule) sched.push_back(d.name());
  for (const auto& c : chain) chain_j.push_back(c.summary());
  for (const auto& h : hits)
    hits_j.push_back(Json{{"step", h.step}, {"set", h.set.name()}, {"extended", h.extended}, {"n", h.n},
                          {"amalgamation", h.amalgamation}});
  for (const auto& [xi, e] : entry) entry_j.push_back(Json{{"xi", xi}, {"stage", e.stage}, {"cut", e.cut}});
  for (const auto& b : last().blocks) blocks.push_back(matrix_sparse_json(b->m));
  Json j{{"config", config.json()},   {"families", paired_json(families)},
         {"schedule", sched},         {"chain", chain_j},
         {"hits", hits_j},            {"entry", entry_j},
         {"blocks", blocks},          {"layout", last().layout().cuts},
         {"matrix", matrix_sparse_json(last().matrix())},
         {"report", report.json()}};
  j["error"] = error ? Json(*error) : Json(nullptr);
  return j;
}

GenericRun run_generic(const PairedFamilies& fam, const std::vector<DenseSet>& schedule,
                       const ForcingConfig& config) {
  GenericRun run;
  run.config = config;
  run.families = fam;
  run.schedule = schedule;
  run.chain.push_back(Condition::trivial());
  if (auto problems = check_families(fam); !problems.empty()) {
    run.error = "families rejected: " + problems.front();
    return run;
  }
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const DenseSet& d = schedule[k];
    const Condition& p = run.chain.back();
    AmalgamationInfo info;
    info.n_r = -1;
    Condition r;
    try {
      r = d.kind == 'D' ? dense_hit_D(p, d.value, fam, config, &info) : dense_hit_E(p, d.value, fam, config, &info);
    } catch (const std::exception& e) {
      run.error = "step " + std::to_string(k) + " (" + d.name() + "): " + e.what();
      break;
    }
    const bool extended = r.n != p.n || r.a != p.a;
    Hit h{k, d, extended, r.n, extended ? info.json() : Json(nullptr)};
    run.hits.push_back(std::move(h));
    if (!extended) continue;
    for (Index xi : r.a)
      if (!p.has(xi)) run.entry[xi] = Entry{run.chain.size(), p.n};
    run.chain.push_back(std::move(r));
  }
  run.report = verify_run(run);
  return run;
}

namespace {

void fail(RunReport& rep, const std::string& check, Json detail) {
  detail["check"] = check;
  rep.failures.push_back(std::move(detail));
}

}  // namespace

RunReport verify_run(const GenericRun& run) {
  RunReport rep;
  const PairedFamilies& fam = run.families;
  const ForcingConfig& cfg = run.config;
  if (run.error) fail(rep, "run", Json{{"error", *run.error}});
  for (const auto& problem : check_families(fam)) fail(rep, "families", Json{{"what", problem}});
  if (!rep.failures.empty() && run.chain.empty()) return rep;
  if (run.chain.empty()) {
    fail(rep, "1", Json{{"what", "empty chain"}});
    return rep;
  }
  const Condition& top = run.chain.front();
  if (top.n != 0 || !top.blocks.empty() || !top.a.empty()) fail(rep, "1", Json{{"what", "p_0 is not trivial"}});

  // (1) chain order, with the two-step relation as a transitivity sample.
  rep.chain_steps = run.chain.size() - 1;
  for (std::size_t k = 0; k < run.chain.size(); ++k) {
    const Condition& p = run.chain[k];
    for (const auto& v : validate_condition(p, fam, cfg, false))
      fail(rep, "1", Json{{"stage", k}, {"violation", v.json()}});
    for (std::size_t back : {std::size_t{1}, std::size_t{2}}) {
      if (k < back) continue;
      if (auto l = cond_leq(p, run.chain[k - back], fam); !l)
        fail(rep, "1", Json{{"stage", k}, {"above", k - back}, {"witness", l.witness}});
    }
  }

  // (2) blocks of the final condition; every earlier condition's blocks are a prefix.
  const Condition& last = run.chain.back();
  rep.blocks = last.blocks.size();
  Index at = 0;
  for (std::size_t k = 0; k < last.blocks.size(); ++k) {
    const Block& b = *last.blocks[k];
    if (b.window().lo != at || b.m.col_window() != b.window())
      fail(rep, "2", Json{{"block", k}, {"what", "layout is not consecutive"}});
    at = b.window().hi;
    const Rational norm = op_norm_inf(b.m);
    rep.max_norm = std::max(rep.max_norm, norm);
    if (norm > cfg.c2) fail(rep, "2", Json{{"block", k}, {"norm", rational_json(norm)}});
    try {
      const RMatrix inv = invert(b.m);
      const Rational inv_norm = op_norm_inf(inv);
      rep.max_inverse_norm = std::max(rep.max_inverse_norm, inv_norm);
      if (inv_norm > cfg.c2) fail(rep, "2", Json{{"block", k}, {"inverse_norm", rational_json(inv_norm)}});
    } catch (const Singular&) {
      fail(rep, "2", Json{{"block", k}, {"what", "singular"}});
    }
  }
  if (at != last.n) fail(rep, "2", Json{{"what", "blocks do not cover [0, n)"}});

  // (3) M f_xi - g_xi vanishes from the entry cut up to the horizon.
  const Index horizon = std::min(cfg.horizon, last.n);
  if (!last.a.empty() && last.n < cfg.horizon)
    fail(rep, "3", Json{{"what", "matrix ends before the horizon"}, {"n", last.n}, {"horizon", cfg.horizon}});
  rep.indices = last.a.size();
  for (Index xi : last.a) {
    auto it = run.entry.find(xi);
    if (it == run.entry.end() || it->second.stage == 0 || it->second.stage >= run.chain.size()) {
      fail(rep, "3", Json{{"xi", xi}, {"what", "no entry stage"}});
      continue;
    }
    const Entry& e = it->second;
    if (!run.chain[e.stage].has(xi) || run.chain[e.stage - 1].has(xi) || run.chain[e.stage - 1].n != e.cut) {
      fail(rep, "3", Json{{"xi", xi}, {"what", "entry stage does not match the chain"}});
      continue;
    }
    const Window w{e.cut, last.n};
    const WindowVector mf = last.apply(fam.f_at(xi).window(w));
    const WindowVector g = fam.g_at(xi).window(w);
    bool clean = true;
    for (Index i = w.lo; i < horizon && clean; ++i)
      if (mf[i] != g[i]) {
        clean = false;
        fail(rep, "3", Json{{"xi", xi}, {"coordinate", i}, {"expected", rational_json(g[i])},
                            {"got", rational_json(mf[i])}});
      }
    // Repeating the last block forever keeps M f_xi = g_xi when it starts past both
    // prefixes and its length is a multiple of both periods.
    bool sym = clean && !last.blocks.empty();
    if (sym) {
      const Window lw = last.blocks.back()->window();
      const TailVector &f = fam.f_at(xi), &gg = fam.g_at(xi);
      sym = lw.lo >= e.cut && lw.lo >= std::max(f.prefix_length(), gg.prefix_length()) &&
            lw.size() % lcm64(f.period_length(), gg.period_length()) == 0;
      for (Index i = std::max(lw.lo, horizon); sym && i < lw.hi; ++i) sym = mf[i] == g[i];
    }
    rep.symbolic_tail[xi] = sym;
  }

  // (4) row l1 norms of the assembled matrix.
  for (std::size_t k = 0; k < last.blocks.size(); ++k) {
    const RMatrix& m = last.blocks[k]->m;
    rep.rows += static_cast<std::size_t>(m.num_rows());
    for (Index i = m.row_window().lo; i < m.row_window().hi; ++i) {
      const Rational l1 = m.row(i).l1_norm();
      if (l1 > cfg.c2) fail(rep, "4", Json{{"row", i}, {"l1", rational_json(l1)}});
    }
  }
  return rep;
}

GenericRun run_from(const Json& j) {
  GenericRun run;
  run.config = forcing_config_from(j.at("config"));
  run.families = paired_from(j.at("families"));
  for (const auto& s : j.at("schedule")) run.schedule.push_back(dense_set_from(s.get<std::string>()));
  std::vector<BlockPtr> blocks;
  for (const auto& b : j.at("blocks")) blocks.push_back(make_block(matrix_from_sparse(b), RMatrix()));
  for (const auto& c : j.at("chain")) {
    Condition p;
    p.n = c.at("n").get<Index>();
    p.a = c.at("a").get<std::vector<Index>>();
    const auto cuts = c.at("cuts").get<std::vector<Index>>();
    const std::size_t nb = cuts.empty() ? 0 : cuts.size() - 1;
    if (nb > blocks.size()) throw ParseError("chain refers to more blocks than the run lists");
    p.blocks.assign(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(nb));
    run.chain.push_back(std::move(p));
  }
  for (const auto& h : j.at("hits"))
    run.hits.push_back(Hit{h.at("step").get<std::size_t>(), dense_set_from(h.at("set").get<std::string>()),
                           h.at("extended").get<bool>(), h.at("n").get<Index>(), h.at("amalgamation")});
  for (const auto& e : j.at("entry"))
    run.entry[e.at("xi").get<Index>()] = Entry{e.at("stage").get<std::size_t>(), e.at("cut").get<Index>()};
  if (j.contains("error") && !j.at("error").is_null()) run.error = j.at("error").get<std::string>();
  return run;
}

}  // namespace qf::forcing
