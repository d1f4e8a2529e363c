#include "qf/cli/commands.hpp"

#include <fstream>
#include <sstream>

#include "qf/geom/extension.hpp"
#include "qf/quotient/windows.hpp"

namespace qf::cli {

forcing::ForcingConfig RunConfig::forcing() const {
  forcing::ForcingConfig f;
  f.rho = rho;
  f.c1 = c1;
  f.c2 = c2;
  f.delta = delta;
  f.complement_budget_sq = complement_budget_sq;
  f.horizon = horizon;
  f.search_cap = search_cap;
  f.align = align;
  return f;
}

geom::ExtensionConfig RunConfig::extension() const {
  geom::ExtensionConfig e = forcing().extension();
  e.vertex_cap = vertex_cap;
  return e;
}

adf::IsoChainConfig RunConfig::iso() const {
  adf::IsoChainConfig c;
  c.cap = cap;
  c.sample_j = sample_j;
  return c;
}

Json RunConfig::json() const {
  Json j = forcing().json();
  j["cap"] = cap.str();
  j["sample_j"] = sample_j;
  j["vertex_cap"] = vertex_cap;
  j["seed"] = seed;
  j["schedule"] = schedule;
  return j;
}

RunConfig run_config_from(const Json& j, RunConfig c) {
  const forcing::ForcingConfig f = forcing::forcing_config_from(j, c.forcing());
  c.rho = f.rho;
  c.c1 = f.c1;
  c.c2 = f.c2;
  c.delta = f.delta;
  c.complement_budget_sq = f.complement_budget_sq;
  c.horizon = f.horizon;
  c.search_cap = f.search_cap;
  c.align = f.align;
  if (j.contains("cap")) c.cap = adf::ordinal_from(j.at("cap"));
  if (j.contains("sample_j")) c.sample_j = j.at("sample_j").get<adf::Nat>();
  if (j.contains("vertex_cap")) c.vertex_cap = j.at("vertex_cap").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("schedule")) c.schedule = j.at("schedule").get<std::vector<std::string>>();
  return c;
}

Json Output::document(const RunConfig& cfg) const {
  return Json{{"command", command}, {"config", cfg.json()}, {"result", result}, {"failures", failures}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

const Json& payload(const Json& j) {
  if (j.is_object() && j.contains("command") && j.contains("result")) return j.at("result");
  return j;
}

Output cmd_build_adf(const adf::FamilyGenerator& gen) {
  adf::Family fam;
  try {
    fam = adf::make_family(gen);
  } catch (const adf::ParameterCap& e) {
    throw UsageError(e.what());
  }
  Output o{"build-adf", fam.json(), 0};
  if (!fam.almost_disjoint()) ++o.failures;
  if (fam.luzin && !fam.luzin->ok) ++o.failures;
  return o;
}

Output cmd_check_separation(const adf::Family& fam, const std::optional<adf::Ordinal>& split,
                            const std::vector<std::size_t>& inside) {
  std::vector<adf::CertSet> bs, cs;
  Json in_idx = Json::array(), out_idx = Json::array();
  for (std::size_t i = 0; i < fam.sets.size(); ++i) {
    const bool b = split ? fam.index[i] < *split : std::find(inside.begin(), inside.end(), i) != inside.end();
    (b ? bs : cs).push_back(fam.sets[i]);
    (b ? in_idx : out_idx).push_back(adf::ordinal_json(fam.index[i]));
  }
  Output o{"check-separation", Json{{"inside", in_idx}, {"outside", out_idx}}, 0};
  try {
    const adf::Separation s = adf::separation_find(bs, cs);
    o.result["found"] = true;
    o.result["separation"] = s.json();
    if (!s.ok()) ++o.failures;
  } catch (const adf::NotFound& e) {
    o.result["found"] = false;
    o.result["reason"] = e.what();
    ++o.failures;
  }
  return o;
}

Output cmd_build_coherent(const adf::Family& fam, const RunConfig& cfg) {
  const adf::IsoChainReport rep = adf::iso_chain(fam, cfg.iso());
  Output o{"build-coherent", rep.json(), static_cast<std::size_t>(rep.failures)};
  std::vector<adf::Ordinal> base;
  for (const auto& xi : fam.index)
    if (xi < cfg.cap && base.size() < 6) base.push_back(xi);
  const adf::LawReport laws = adf::verify_boolean_laws(*rep.family, base);
  o.result["boolean_laws"] = laws.json();
  o.failures += static_cast<std::size_t>(laws.failures);
  std::set<adf::Ordinal> half(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(base.size() / 2));
  const adf::Separation sep = adf::separator_from_embedding(*rep.family, half);
  o.result["separator"] = sep.json();
  if (!sep.ok()) ++o.failures;
  return o;
}

Output cmd_mad_census(const std::vector<adf::CertSet>& family, const adf::CertSet& x) {
  return {"mad-census", adf::mad_census(family, x).json(), 0};
}

namespace {

std::vector<quotient::TailVector> tails_from(const Json& j) {
  std::vector<quotient::TailVector> out;
  for (const auto& t : j) out.push_back(quotient::tail_from(t));
  return out;
}

Json demo_input(const std::string& op) {
  auto arr = [](std::initializer_list<long> xs) {
    Json a = Json::array();
    for (long x : xs) a.push_back(rational_json(Rational(x)));
    return a;
  };
  const Json ind01 = arr({1, 1, 0, 0}), ind23 = arr({0, 0, 1, 1});
  const Json evens = quotient::tail_json(quotient::TailVector({}, {Rational(1), Rational(0)}));
  const Json thirds = quotient::tail_json(quotient::TailVector({Rational(1)}, {Rational(0), Rational(0), Rational(1)}));
  if (op == "op-norm") return matrix_json(RMatrix::identity({0, 3}));
  if (op == "lower-bound")
    return Json{{"domain", {{"ambient", {0, 2}}, {"basis", Json::array({arr({1, 0}), arr({0, 1})})}}},
                {"codomain", {0, 2}},
                {"images", Json::array({arr({2, 0}), arr({0, 2})})}};
  if (op == "hahn-banach")
    return Json{{"Y", {{"ambient", {0, 2}}, {"basis", Json::array({arr({1, 1})})}}}, {"phi", arr({1})}};
  if (op == "extend-iso")
    return Json{{"domain", {{"ambient", {0, 4}}, {"basis", Json::array({ind01})}}}, {"codomain", {0, 4}},
                {"images", Json::array({ind23})}};
  if (op == "quotient-norm")
    return quotient::tail_json(quotient::TailVector({Rational(5)}, {Rational(-2), Rational(1, 2)}));
  if (op == "section-norm") return Json{{"tails", {evens, thirds}}, {"n", 0}};
  if (op == "lifting-index" || op == "restriction-index")
    return Json{{"tails", {evens, thirds}}, {"epsilon", "1/10"}};
  if (op == "r-inverse-norm") return Json{{"tails", {evens, thirds}}, {"n", 0}, {"n2", 6}};
  throw UsageError("unknown compute op: " + op);
}

}  // namespace

std::vector<std::string> compute_ops() {
  return {"op-norm",       "lower-bound",   "hahn-banach",       "extend-iso",    "quotient-norm",
          "section-norm",  "lifting-index", "restriction-index", "r-inverse-norm"};
}

Output cmd_compute(const std::string& op, const Json& input_or_null, const RunConfig& cfg) {
  const Json in = input_or_null.is_null() ? demo_input(op) : payload(input_or_null);
  Output o{"compute " + op, Json{{"input", in}}, 0};
  Json& res = o.result;
  if (op == "op-norm") {
    const RMatrix m = matrix_from(in);
    res["norm"] = rational_json(op_norm_inf(m));
    if (auto row = op_norm_row(m)) res["row"] = *row;
  } else if (op == "lower-bound") {
    const geom::LinMap t = geom::linmap_from(in);
    const geom::LowerBound lp = geom::lower_bound_lp(t);
    res["value"] = rational_json(lp.value);
    res["witness"] = rationals_json(lp.witness);
    if (t.domain().dim() <= cfg.vertex_cap) {
      const geom::LowerBound vx = geom::lower_bound(t, cfg.vertex_cap);
      res["vertex_value"] = rational_json(vx.value);
      if (vx.value != lp.value) ++o.failures;
    }
  } else if (op == "hahn-banach") {
    const geom::Subspace y = geom::subspace_from(in.at("Y"));
    const std::vector<Rational> phi = rationals_from(in.at("phi"));
    const geom::HahnBanach hb = geom::hahn_banach_extend(y, phi);
    res["u"] = vector_json(hb.u);
    res["value"] = rational_json(hb.norm);
    bool agrees = hb.u.l1_norm() == hb.norm;
    for (std::size_t k = 0; k < y.dim(); ++k) agrees = agrees && hb.u.dot(y.basis()[k]) == phi[k];
    res["agrees"] = agrees;
    if (!agrees) ++o.failures;
    if (y.dim() <= cfg.vertex_cap) {
      const Rational dual = geom::dual_norm_vertex(y, phi, cfg.vertex_cap);
      res["dual_norm_vertex"] = rational_json(dual);
      if (dual != hb.norm) ++o.failures;
    }
  } else if (op == "extend-iso") {
    const geom::LinMap t = geom::linmap_from(in);
    const geom::Extension ext = geom::extend_isomorphism(t, std::nullopt, std::nullopt, cfg.extension());
    const geom::ExtensionCheck chk = geom::verify_extension(t, ext.w, cfg.c2);
    res["extension"] = ext.report();
    res["W"] = matrix_json(ext.w);
    res["W_inverse"] = matrix_json(ext.w_inv);
    res["verified"] = Json{{"agrees", chk.agrees},
                           {"inverse_ok", chk.inverse_ok},
                           {"norms_ok", chk.norms_ok},
                           {"norm", rational_json(chk.norm)},
                           {"inverse_norm", rational_json(chk.inv_norm)}};
    if (!chk.ok()) ++o.failures;
  } else if (op == "quotient-norm") {
    const quotient::TailVector f = quotient::tail_from(in);
    res["quotient_norm"] = rational_json(quotient::quotient_norm(f));
    res["sup_norm"] = rational_json(f.sup_norm());
  } else if (op == "section-norm") {
    res["value"] = rational_json(quotient::pi_section_norm(tails_from(in.at("tails")), in.at("n").get<Index>()));
  } else if (op == "lifting-index" || op == "restriction-index") {
    const quotient::TailSpan s = quotient::make_span(tails_from(in.at("tails")));
    const Rational eps = rational_from(in.at("epsilon"));
    res["window"] = (op == "lifting-index" ? quotient::lifting_index(s, eps) : quotient::restriction_index(s, eps)).json();
  } else if (op == "r-inverse-norm") {
    res["value"] = rational_json(quotient::r_operator_inverse_norm(tails_from(in.at("tails")), in.at("n").get<Index>(),
                                                                   in.at("n2").get<Index>()));
  } else {
    throw UsageError("unknown compute op: " + op);
  }
  return o;
}

Output cmd_forge(const forcing::PairedFamilies& fam, const RunConfig& cfg) {
  std::vector<forcing::DenseSet> schedule;
  if (cfg.schedule.empty()) {
    schedule = forcing::default_schedule(fam, cfg.horizon);
  } else {
    for (const auto& s : cfg.schedule) schedule.push_back(forcing::dense_set_from(s));
  }
  const forcing::GenericRun run = forcing::run_generic(fam, schedule, cfg.forcing());
  return {"forge-matrix", run.json(), run.report.failures.size()};
}

Output cmd_verify_run(const Json& run) {
  const forcing::RunReport rep = forcing::verify_run(forcing::run_from(payload(run)));
  return {"verify-run", rep.json(), rep.failures.size()};
}

}  // namespace qf::cli
