#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qf/cli/commands.hpp"

using namespace qf;
using namespace qf::cli;

namespace {

struct Flags {
  std::string config_path, out_path;
  std::string rho, c1, c2, cap, schedule;
  Index horizon = -1, search_cap = -1;
  long long seed = -1;
};

RunConfig resolve(const Flags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) cfg = run_config_from(read_json_file(f.config_path), cfg);
  Json over = Json::object();
  if (!f.rho.empty()) over["rho"] = f.rho;
  if (!f.c1.empty()) over["c1"] = f.c1;
  if (!f.c2.empty()) over["c2"] = f.c2;
  if (!f.cap.empty()) over["cap"] = f.cap;
  if (f.horizon >= 0) over["horizon"] = f.horizon;
  if (f.search_cap >= 0) over["search_cap"] = f.search_cap;
  if (f.seed >= 0) over["seed"] = f.seed;
  if (!f.schedule.empty()) {
    std::vector<std::string> s;
    std::stringstream ss(f.schedule);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) s.push_back(item);
    over["schedule"] = s;
  }
  return run_config_from(over, cfg);
}

adf::FamilyGenerator generator(const std::string& kind, adf::Nat count, adf::Nat depth, adf::Nat blocks,
                               adf::Nat horizon) {
  adf::FamilyGenerator g;
  try {
    g.kind = adf::family_kind_from(kind);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (g.kind == adf::FamilyKind::Explicit) throw UsageError("explicit families are read with --family");
  g.count = count;
  g.depth = depth;
  g.blocks = blocks;
  g.horizon = horizon;
  return g;
}

adf::Family family_file(const std::string& path) { return adf::family_from(payload(read_json_file(path))); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact l_inf geometry, almost disjoint families and block matrix forging"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--config", flags.config_path, "JSON config file")->envname("QF_CONFIG");
  app.add_option("--out", flags.out_path, "write the JSON document here instead of stdout");
  app.add_option("--rho", flags.rho, "rho as p/q");
  app.add_option("--c1", flags.c1, "c1 as p/q");
  app.add_option("--c2", flags.c2, "c2 as p/q");
  app.add_option("--horizon", flags.horizon, "matrix horizon");
  app.add_option("--search-cap", flags.search_cap, "largest n_r - n tried by amalgamation");
  app.add_option("--cap", flags.cap, "ordinal cap, e.g. w*2");
  app.add_option("--seed", flags.seed, "seed recorded in the config");
  app.add_option("--schedule", flags.schedule, "comma separated dense sets, e.g. E_0,E_1,D_64");

  std::string kind = "progression";
  adf::Nat count = 3, depth = 4, blocks = 1, luzin_horizon = 64;
  auto* build = app.add_subcommand("build-adf", "build an almost disjoint family with certificates");
  build->add_option("--kind", kind, "progression, branch or luzin")->required();
  build->add_option("--count", count, "number of members (luzin: N)");
  build->add_option("--depth", depth, "branch tree depth");
  build->add_option("--blocks", blocks, "progression blocks K");
  build->add_option("--luzin-horizon", luzin_horizon, "n range of the luzin invariant");

  std::string family_path, split;
  std::vector<std::size_t> inside;
  auto* sep = app.add_subcommand("check-separation", "find and certify a separating set");
  sep->add_option("family", family_path, "family JSON")->required();
  auto* split_opt = sep->add_option("--split", split, "members with index below this ordinal go inside");
  sep->add_option("--inside", inside, "positions of the inside members")->delimiter(',')->excludes(split_opt);

  auto* coh = app.add_subcommand("build-coherent", "build the coherent family up to the cap and check it");
  coh->add_option("--family", family_path, "family JSON");
  coh->add_option("--kind", kind, "generator kind when no file is given");
  coh->add_option("--count", count, "generator members");
  coh->add_option("--blocks", blocks, "progression blocks K");

  std::string set_path;
  auto* census = app.add_subcommand("mad-census", "which members meet a set infinitely often");
  census->add_option("--family", family_path, "family JSON")->required();
  census->add_option("--set", set_path, "CertSet JSON")->required();

  std::string op, input_path;
  bool demo = false;
  auto* comp = app.add_subcommand("compute", "single geometry or quotient computation");
  comp->add_option("op", op, "operation")->required()->check(CLI::IsMember(compute_ops()));
  comp->add_option("--input", input_path, "input JSON");
  comp->add_flag("--demo", demo, "use the built-in example input");

  std::string families_path, demo_name;
  Index kappa = 8;
  auto* forge = app.add_subcommand("forge-matrix", "run the generic chain and assemble the block matrix");
  forge->add_option("--families", families_path, "paired families JSON");
  forge->add_option("--demo", demo_name, "singleton or branch")->check(CLI::IsMember({"singleton", "branch"}));
  forge->add_option("--kappa", kappa, "indices of the branch demo");

  std::string run_path;
  auto* verify = app.add_subcommand("verify-run", "re-verify a forged run");
  verify->add_option("run", run_path, "run JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const RunConfig cfg = resolve(flags);
    Output out;
    if (*build) {
      out = cmd_build_adf(generator(kind, count, depth, blocks, luzin_horizon));
    } else if (*sep) {
      std::optional<adf::Ordinal> at;
      if (!split.empty()) at = adf::parse_ordinal(split);
      if (!at && inside.empty()) throw UsageError("give --split or --inside");
      out = cmd_check_separation(family_file(family_path), at, inside);
    } else if (*coh) {
      adf::Family fam = family_path.empty() ? adf::make_family(generator(kind, count, depth, blocks, luzin_horizon))
                                            : family_file(family_path);
      out = cmd_build_coherent(fam, cfg);
    } else if (*census) {
      out = cmd_mad_census(family_file(family_path).sets, adf::cert_set_from(payload(read_json_file(set_path))));
    } else if (*comp) {
      if (input_path.empty() && !demo) throw UsageError("give --input or --demo");
      out = cmd_compute(op, demo ? Json(nullptr) : read_json_file(input_path), cfg);
    } else if (*forge) {
      forcing::PairedFamilies fam;
      if (!families_path.empty()) {
        fam = forcing::paired_from(payload(read_json_file(families_path)));
      } else if (demo_name == "singleton") {
        fam = forcing::singleton_indicators(cfg.rho);
      } else if (demo_name == "branch") {
        fam = forcing::branch_to_progression(kappa, cfg.rho);
      } else {
        throw UsageError("give --families or --demo");
      }
      out = cmd_forge(fam, cfg);
    } else if (*verify) {
      out = cmd_verify_run(read_json_file(run_path));
    }
    const std::string text = out.document(cfg).dump(2) + "\n";
    if (flags.out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(flags.out_path);
      if (!f) throw std::runtime_error("cannot write " + flags.out_path);
      f << text;
    }
    if (out.failures > 0) std::cerr << out.command << ": " << out.failures << " failure(s)\n";
    return out.failures == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
