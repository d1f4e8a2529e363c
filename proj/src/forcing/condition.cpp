#include "qf/forcing/condition.hpp"

#include <algorithm>

#include "qf/quotient/windows.hpp"

namespace qf::forcing {

geom::ExtensionConfig ForcingConfig::extension() const {
  geom::ExtensionConfig e;
  e.rho = rho;
  e.c1 = c1;
  e.c2 = c2;
  e.delta = delta;
  e.complement_budget_sq = complement_budget_sq;
  return e;
}

Json ForcingConfig::json() const {
  return Json{{"rho", rational_json(rho)},
              {"c1", rational_json(c1)},
              {"c2", rational_json(c2)},
              {"delta", rational_json(delta)},
              {"complement_budget_sq", rational_json(complement_budget_sq)},
              {"horizon", horizon},
              {"search_cap", search_cap},
              {"align", align}};
}

ForcingConfig forcing_config_from(const Json& j, ForcingConfig c) {
  if (j.contains("rho")) c.rho = rational_from(j.at("rho"));
  if (j.contains("c1")) c.c1 = rational_from(j.at("c1"));
  if (j.contains("c2")) c.c2 = rational_from(j.at("c2"));
  if (j.contains("delta")) c.delta = rational_from(j.at("delta"));
  if (j.contains("complement_budget_sq")) c.complement_budget_sq = rational_from(j.at("complement_budget_sq"));
  if (j.contains("horizon")) c.horizon = j.at("horizon").get<Index>();
  if (j.contains("search_cap")) c.search_cap = j.at("search_cap").get<Index>();
  if (j.contains("align")) c.align = j.at("align").get<bool>();
  return c;
}

BlockPtr make_block(RMatrix m) {
  RMatrix inv = invert(m);
  return make_block(std::move(m), std::move(inv));
}

BlockPtr make_block(RMatrix m, RMatrix inverse) {
  if (m.row_window() != m.col_window()) throw ForcingError("blocks must be square on one window");
  return std::make_shared<const Block>(Block{std::move(m), std::move(inverse)});
}

BlockLayout Condition::layout() const {
  if (blocks.empty()) return BlockLayout();
  std::vector<Index> cuts{blocks.front()->window().lo};
  for (const auto& b : blocks) cuts.push_back(b->window().hi);
  return BlockLayout(std::move(cuts));
}

bool Condition::has(Index xi) const { return std::binary_search(a.begin(), a.end(), xi); }

WindowVector Condition::apply(const WindowVector& v) const {
  const Window w = v.window();
  WindowVector out = WindowVector::zeros(w);
  for (const auto& b : blocks) {
    const Window bw = b->window();
    const Index lo = std::max(bw.lo, w.lo), hi = std::min(bw.hi, w.hi);
    for (Index i = lo; i < hi; ++i) {
      Rational s = 0;
      for (Index j = lo; j < hi; ++j)
        if (b->m(i, j) != 0 && v[j] != 0) s += b->m(i, j) * v[j];
      out[i] = s;
    }
  }
  return out;
}

RMatrix Condition::matrix() const {
  if (blocks.empty()) return RMatrix({0, n}, {0, n});
  std::vector<RMatrix> ms;
  for (const auto& b : blocks) ms.push_back(b->m);
  return block_compose(ms, layout());
}

Json Condition::json() const {
  Json bs = Json::array();
  for (const auto& b : blocks) bs.push_back(matrix_sparse_json(b->m));
  return Json{{"n", n}, {"a", a}, {"blocks", bs}};
}

Json Condition::summary() const {
  return Json{{"n", n}, {"a", a}, {"cuts", layout().cuts}};
}

Condition condition_from(const Json& j) {
  Condition p;
  p.n = j.at("n").get<Index>();
  p.a = j.at("a").get<std::vector<Index>>();
  for (const auto& b : j.at("blocks")) p.blocks.push_back(make_block(matrix_from_sparse(b)));
  return p;
}

Json Violation::json() const {
  Json j{{"clause", clause}, {"what", what}};
  if (measured) j["measured"] = rational_json(*measured);
  return j;
}

std::vector<Violation> validate_condition(const Condition& p, const PairedFamilies& fam,
                                          const ForcingConfig& config, bool check_blocks) {
  std::vector<Violation> out;
  Index at = 0;
  for (std::size_t k = 0; k < p.blocks.size(); ++k) {
    const Window w = p.blocks[k]->window();
    if (w.lo != at || w.hi <= w.lo || p.blocks[k]->m.col_window() != w)
      out.push_back({"a", "block " + std::to_string(k) + " does not continue the layout at " + std::to_string(at), {}});
    at = w.hi;
  }
  if (at != p.n) out.push_back({"a", "blocks end at " + std::to_string(at) + ", not at n_p", Rational(at)});
  if (!std::is_sorted(p.a.begin(), p.a.end()) || std::adjacent_find(p.a.begin(), p.a.end()) != p.a.end())
    out.push_back({"a", "a_p is not an increasing list", {}});
  for (Index xi : p.a)
    if (!fam.has(xi)) out.push_back({"a", "index " + std::to_string(xi) + " is not in the family", {}});
  if (!out.empty()) return out;

  for (std::size_t k = 0; check_blocks && k < p.blocks.size(); ++k) {
    const std::string name = "block " + std::to_string(k);
    const Rational norm = op_norm_inf(p.blocks[k]->m);
    if (norm > config.c2) out.push_back({"b", "||M|| on " + name + " exceeds c2", norm});
    try {
      const Rational inv_norm = op_norm_inf(invert(p.blocks[k]->m));
      if (inv_norm > config.c2) out.push_back({"b", "||M^-1|| on " + name + " exceeds c2", inv_norm});
    } catch (const Singular&) {
      out.push_back({"b", name + " is singular", {}});
    }
  }
  if (!p.a.empty()) {
    try {
      const Rational sf = quotient::pi_section_norm(fam.f_of(p.a), p.n);
      const Rational sg = quotient::pi_section_norm(fam.g_of(p.a), p.n);
      if (sf > 2) out.push_back({"c", "||Pi_F|| exceeds 2", sf});
      if (sg > 2) out.push_back({"c", "||Pi_G|| exceeds 2", sg});
    } catch (const quotient::NotInjective&) {
      out.push_back({"c", "pi is not injective on the span of a_p", {}});
    }
  }
  return out;
}

namespace {

Rational entry(const Condition& p, Index i, Index j) {
  for (const auto& b : p.blocks) {
    const Window w = b->window();
    if (w.contains(i)) return w.contains(j) ? b->m(i, j) : Rational(0);
  }
  return 0;
}

bool same_block(const BlockPtr& x, const BlockPtr& y) { return x == y || x->m == y->m; }

}  // namespace

LeqResult cond_leq(const Condition& p, const Condition& q, const PairedFamilies& fam) {
  LeqResult r;
  if (p.n < q.n) {
    r.witness = Json{{"clause", "i"}, {"n_p", p.n}, {"n_q", q.n}};
    return r;
  }
  for (Index xi : q.a)
    if (!p.has(xi)) {
      r.witness = Json{{"clause", "iii"}, {"xi", xi}};
      return r;
    }
  bool prefix = p.blocks.size() >= q.blocks.size();
  for (std::size_t k = 0; prefix && k < q.blocks.size(); ++k) prefix = same_block(p.blocks[k], q.blocks[k]);
  if (!prefix) {
    for (Index i = 0; i < p.n; ++i)
      for (Index j = 0; j < p.n; ++j) {
        if (i >= q.n && j >= q.n) continue;
        const Rational want = i < q.n && j < q.n ? entry(q, i, j) : Rational(0);
        const Rational got = entry(p, i, j);
        if (got != want) {
          r.witness = Json{{"clause", "ii"}, {"row", i}, {"col", j},
                           {"expected", rational_json(want)}, {"got", rational_json(got)}};
          return r;
        }
      }
  }
  const Window w{q.n, p.n};
  for (Index xi : q.a) {
    const WindowVector got = p.apply(fam.f_at(xi).window(w));
    const WindowVector want = fam.g_at(xi).window(w);
    for (Index i = w.lo; i < w.hi; ++i)
      if (got[i] != want[i]) {
        r.witness = Json{{"clause", "iv"}, {"xi", xi}, {"coordinate", i},
                         {"expected", rational_json(want[i])}, {"got", rational_json(got[i])}};
        return r;
      }
  }
  r.holds = true;
  return r;
}

Json AmalgamationInfo::json() const {
  return Json{{"n_r", n_r},
              {"period", period},
              {"candidates", candidates},
              {"section_norm_F", rational_json(section_f)},
              {"section_norm_G", rational_json(section_g)},
              {"R_inverse_norm_F", rational_json(r_inv_f)},
              {"R_inverse_norm_G", rational_json(r_inv_g)},
              {"V_GF_norm", rational_json(v_gf)},
              {"V_FG_norm", rational_json(v_fg)},
              {"extension", extension}};
}

namespace {

Index align_up(Index x, Index l) { return (x + l - 1) / l * l; }

std::string violations_text(const std::vector<Violation>& vs) {
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : "; ") + std::string("(") + v.clause + ") " + v.what;
  return s;
}

void certify(const Condition& r, const std::vector<const Condition*>& above, const PairedFamilies& fam,
             const ForcingConfig& config) {
  if (auto vs = validate_condition(r, fam, config); !vs.empty())
    throw VerificationFailed("produced condition is invalid: " + violations_text(vs));
  for (const Condition* p : above)
    if (auto l = cond_leq(r, *p, fam); !l) throw VerificationFailed("produced condition does not extend: " + l.witness.dump());
}

}  // namespace

Condition amalgamate(const Condition& p, const Condition& q, Index big_n, const PairedFamilies& fam,
                     const ForcingConfig& config, AmalgamationInfo* info) {
  bool stem = p.n == q.n && p.blocks.size() == q.blocks.size();
  for (std::size_t k = 0; stem && k < p.blocks.size(); ++k) stem = same_block(p.blocks[k], q.blocks[k]);
  if (!stem) throw NotStemCompatible("conditions do not share (n, M)");
  const Index n = p.n;
  AmalgamationInfo local;
  AmalgamationInfo& inf = info ? *info : local;
  inf = AmalgamationInfo{};

  Condition r;
  r.blocks = p.blocks;
  std::set_union(p.a.begin(), p.a.end(), q.a.begin(), q.a.end(), std::back_inserter(r.a));
  const Index start = std::max(n, big_n) + 1;

  if (r.a.empty()) {
    r.n = start;
    r.blocks.push_back(make_block(RMatrix::identity({n, start}), RMatrix::identity({n, start})));
    inf.n_r = start;
    inf.candidates = {start};
    certify(r, {&p, &q}, fam, config);
    return r;
  }

  const auto fs = fam.f_of(r.a), gs = fam.g_of(r.a);
  const Index h = static_cast<Index>(r.a.size());
  inf.period = config.align ? fam.period_lcm(r.a) : 1;
  const Index dist0 = align_up(start, inf.period) - n;
  Index n_r = -1;
  for (Index d = dist0;; d *= 2) {
    const Index cand = align_up(n + d, inf.period);
    if (cand - n > config.search_cap) break;
    inf.candidates.push_back(cand);
    if (Rational(h * h) > config.c1 * config.c1 * (cand - n)) continue;
    inf.section_f = quotient::pi_section_norm(fs, cand);
    inf.section_g = quotient::pi_section_norm(gs, cand);
    if (inf.section_f > 2 || inf.section_g > 2) continue;
    try {
      inf.r_inv_f = quotient::r_operator_inverse_norm(fs, n, cand);
      inf.r_inv_g = quotient::r_operator_inverse_norm(gs, n, cand);
    } catch (const quotient::NotInvertible&) {
      continue;
    }
    if (inf.r_inv_f > 2 || inf.r_inv_g > 2) continue;
    n_r = cand;
    break;
  }
  if (n_r < 0)
    throw SearchExhausted("no admissible n_r within " + std::to_string(config.search_cap) + " of n = " +
                          std::to_string(n));
  inf.n_r = n_r;

  const Window w{n, n_r};
  std::vector<WindowVector> fw, gw;
  for (std::size_t k = 0; k < fs.size(); ++k) {
    fw.push_back(fs[k].window(w));
    gw.push_back(gs[k].window(w));
  }
  const geom::LinMap v_gf(geom::Subspace(w, fw), w, gw);
  inf.v_gf = geom::op_norm(v_gf);
  inf.v_fg = 1 / geom::lower_bound_lp(v_gf).value;
  if (inf.v_gf > config.rho) throw geom::NormBudget("||V_GF||", inf.v_gf, config.rho);
  if (inf.v_fg > config.rho) throw geom::NormBudget("||V_FG||", inf.v_fg, config.rho);

  geom::Extension ext = geom::extend_isomorphism(v_gf, std::nullopt, std::nullopt, config.extension());
  inf.extension = ext.report();
  for (std::size_t k = 0; k < fw.size(); ++k)
    if (ext.w.apply(fw[k]) != gw[k])
      throw VerificationFailed("interpolation fails for index " + std::to_string(r.a[k]));

  r.n = n_r;
  r.blocks.push_back(make_block(std::move(ext.w), std::move(ext.w_inv)));
  certify(r, {&p, &q}, fam, config);
  return r;
}

Condition dense_hit_D(const Condition& p, Index n, const PairedFamilies& fam, const ForcingConfig& config,
                      AmalgamationInfo* info) {
  if (p.n >= n) return p;
  return amalgamate(p, p, n, fam, config, info);
}

Condition dense_hit_E(const Condition& p, Index xi, const PairedFamilies& fam, const ForcingConfig& config,
                      AmalgamationInfo* info) {
  if (!fam.has(xi)) throw ForcingError("index " + std::to_string(xi) + " is not in the family");
  if (p.has(xi)) return p;
  Condition q{p.n, p.blocks, {xi}};
  if (auto vs = validate_condition(q, fam, config); !vs.empty())
    throw VerificationFailed("(n_p, M_p, {xi}) is invalid: " + violations_text(vs));
  return amalgamate(p, q, p.n, fam, config, info);
}

}  // namespace qf::forcing
