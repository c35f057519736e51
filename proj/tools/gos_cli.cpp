// gos: batch front end for the graph-of-spaces toolkit.
//
// Exit codes: 0 success / true verdict, 1 clean false verdict, 2 input error,
// 3 budget exhausted, 4 internal invariant breach.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gos/gosformat.hpp"
#include "gos/invariants.hpp"
#include "gos/leighton.hpp"
#include "gos/pipeline.hpp"
#include "gos/treespace.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;
constexpr int kBudget = 3;
constexpr int kBreach = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

gos::Document load(const std::string& path) {
  return gos::parse_document(slurp(path));
}

int cmd_validate(const std::string& file) {
  gos::Document doc;
  try {
    doc = load(file);
  } catch (const gos::ParseError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kInputError;
  }
  bool ok = true;
  if (doc.has_catalog)
    for (const auto& err : gos::check_catalog(doc.catalog)) {
      std::cerr << file << ": catalog: " << err << "\n";
      ok = false;
    }
  for (const auto& [id, d] : doc.descriptors) {
    auto rep = gos::validate(d, doc.catalog);
    if (!rep.ok()) {
      std::cerr << file << ": " << id << ":\n" << rep.str();
      ok = false;
    }
  }
  for (const auto& [id, m] : doc.covers) {
    auto rep = gos::verify_cover(m, doc.descriptor(m.source), doc.descriptor(m.target),
                                 doc.catalog);
    if (!rep.ok()) {
      std::cerr << file << ": " << id << ":\n" << rep.str();
      ok = false;
    }
  }
  if (!ok) return kInputError;
  std::cout << "valid descriptors=" << doc.descriptors.size()
            << " covers=" << doc.covers.size()
            << " certificates=" << doc.certificates.size() << "\n";
  return kOk;
}

int cmd_equiv(const std::string& file, const std::string& a, const std::string& b) {
  auto doc = load(file);
  auto gm = gos::same_ideal_geometry(doc.descriptor(a), doc.descriptor(b), doc.catalog);
  if (gm.yes) {
    std::cout << "equivalent=yes hash=" << gm.shared.hash_hex() << "\n";
    return kOk;
  }
  std::cout << "equivalent=no witness_radius=" << gm.witness_radius
            << " witness_class=" << gm.witness_class << "\n";
  return kFalse;
}

int cmd_common_cover(const std::string& file, const std::string& a, const std::string& b,
                     const gos::SearchBudget& budget) {
  auto doc = load(file);
  const auto& da = doc.descriptor(a);
  const auto& db = doc.descriptor(b);
  gos::CommonCoverResult res;
  try {
    res = gos::common_cover(da, db, doc.catalog, budget);
  } catch (const std::invalid_argument& e) {
    std::cout << "common_cover=no " << e.what() << "\n";
    return kFalse;
  }
  if (!res.cover) {
    std::cerr << res.report.str();
    return kBudget;
  }
  auto wr = gos::commensurating_witness(*res.cover, da, db, doc.catalog);
  if (!wr.ok) {
    std::cerr << "emitted cover failed re-verification\n" << wr.str();
    return kBreach;
  }
  gos::Document out;
  out.catalog = doc.catalog;
  out.has_catalog = true;
  out.descriptors[da.id] = da;
  out.descriptors[db.id] = db;
  out.descriptors[res.cover->c.id] = res.cover->c;
  out.covers[res.cover->p.id] = res.cover->p;
  out.covers[res.cover->q.id] = res.cover->q;
  std::cout << gos::serialize(out);
  std::cerr << wr.str();
  return kOk;
}

int cmd_invariants(const std::string& file, const std::string& d) {
  auto doc = load(file);
  std::cout << gos::invariant_report(doc.descriptor(d), doc.catalog).str();
  return kOk;
}

int cmd_obstruction(const std::string& file, const std::string& a, const std::string& b) {
  auto doc = load(file);
  auto v = gos::obstruction(doc.descriptor(a), doc.descriptor(b), doc.catalog);
  std::cout << v.str();
  return v.found() ? kFalse : kOk;
}

int cmd_rigidity_surfaces(int g1, int g2, int h1, int h2) {
  bool comm = gos::whyte_decider(g1, g2, h1, h2);
  bool geom = gos::surface_rigidity_decider(g1, g2, h1, h2);
  std::cout << "commensurable=" << (comm ? "yes" : "no")
            << " model_geometry=" << (geom ? "yes" : "no") << "\n";
  return comm && geom ? kOk : kFalse;
}

int cmd_rigidity_volumes(const std::string& file, const std::string& a,
                         const std::string& b) {
  auto doc = load(file);
  bool m = gos::volume_matching_decider(doc.descriptor(a), doc.descriptor(b), doc.catalog);
  std::cout << "volume_match=" << (m ? "yes" : "no") << "\n";
  return m ? kOk : kFalse;
}

int cmd_pipeline(const std::string& file, const std::string& a, const std::string& b,
                 const gos::SearchBudget& budget) {
  auto doc = load(file);
  auto res = gos::commensurate(doc.descriptor(a), doc.descriptor(b), doc.catalog,
                               doc.groups, budget);
  if (res.failure) {
    std::cerr << res.failure->stage << " " << res.failure->reason << ": "
              << res.failure->detail << "\n";
    if (res.failure->reason == "CapExceeded" || res.failure->reason == "Exhausted")
      return kBudget;
    if (res.failure->reason == "MissingGroupData") return kInputError;
    return kFalse;  // SignatureMismatch
  }
  std::cout << gos::serialize(res.doc);
  return kOk;
}

int cmd_generate_s7(long long f, long long r, long long di) {
  auto out = gos::generate_section7({f, r, di});
  std::cout << gos::serialize(out.doc);
  std::cerr << "p=" << out.p << " q=" << out.q << " rank=" << out.rank << "\n";
  return kOk;
}

int cmd_check(const std::string& file) {
  gos::Document doc;
  try {
    doc = load(file);
  } catch (const gos::ParseError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return kInputError;
  }
  if (gos::check_certificate(doc)) {
    std::cout << "certificate=ok\n";
    return kOk;
  }
  std::cout << "certificate=invalid\n";
  return kBreach;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-of-spaces commensurability toolkit"};
  app.require_subcommand(1);

  unsigned long long seed = 0;
  int threads = 1;
  app.add_option("--seed", seed, "search seed (recorded in reports)")->capture_default_str();
  app.add_option("--threads", threads, "worker threads")->capture_default_str();

  std::string file, da, db;
  gos::SearchBudget budget;

  auto add_budget = [&](CLI::App* c) {
    c->add_option("--max-nodes", budget.max_nodes, "search node budget");
    c->add_option("--max-degree-pairs", budget.max_degree_pairs, "degree ladder length");
    c->add_option("--time-limit", budget.time_limit_s, "seconds per search");
  };

  auto* validate = app.add_subcommand("validate", "parse and validate a document");
  validate->add_option("file", file)->required();

  auto* equiv = app.add_subcommand("equiv", "decide shared ideal geometry");
  equiv->add_option("file", file)->required();
  equiv->add_option("a", da)->required();
  equiv->add_option("b", db)->required();

  auto* ccov = app.add_subcommand("common-cover", "construct a common finite cover");
  ccov->add_option("file", file)->required();
  ccov->add_option("a", da)->required();
  ccov->add_option("b", db)->required();
  add_budget(ccov);

  auto* inv = app.add_subcommand("invariants", "commensurability invariants");
  inv->add_option("file", file)->required();
  inv->add_option("desc", da)->required();

  auto* obs = app.add_subcommand("obstruction", "first commensurability obstruction");
  obs->add_option("file", file)->required();
  obs->add_option("a", da)->required();
  obs->add_option("b", db)->required();

  auto* rig = app.add_subcommand("rigidity", "surface / volume rigidity deciders");
  std::vector<int> genera;
  bool volumes = false;
  rig->add_option("--surfaces", genera, "g1 g2 h1 h2")->expected(4);
  rig->add_flag("--volumes", volumes, "compare vertex volume multisets");
  rig->add_option("file", file);
  rig->add_option("a", da);
  rig->add_option("b", db);

  auto* pipe = app.add_subcommand("pipeline", "four-stage commensuration");
  pipe->add_option("file", file)->required();
  pipe->add_option("a", da)->required();
  pipe->add_option("b", db)->required();
  add_budget(pipe);

  auto* gen = app.add_subcommand("generate-s7", "emit the counterexample pair");
  long long f = 0, r = 0, di = 0;
  gen->add_option("--f", f, "finite group order")->required();
  gen->add_option("--r", r, "edge-orbit count")->required();
  gen->add_option("--di", di, "subgroup index")->required();

  auto* check = app.add_subcommand("check", "re-verify a certificate document");
  check->add_option("file", file)->required();

  CLI11_PARSE(app, argc, argv);
  budget.random_seed = seed;
  (void)threads;  // single-process; accepted for interface stability

  try {
    if (*validate) return cmd_validate(file);
    if (*equiv) return cmd_equiv(file, da, db);
    if (*ccov) return cmd_common_cover(file, da, db, budget);
    if (*inv) return cmd_invariants(file, da);
    if (*obs) return cmd_obstruction(file, da, db);
    if (*rig) {
      if (!genera.empty()) return cmd_rigidity_surfaces(genera[0], genera[1], genera[2], genera[3]);
      if (volumes) return cmd_rigidity_volumes(file, da, db);
      std::cerr << "rigidity: need --surfaces or --volumes\n";
      return kInputError;
    }
    if (*pipe) return cmd_pipeline(file, da, db, budget);
    if (*gen) return cmd_generate_s7(f, r, di);
    if (*check) return cmd_check(file);
  } catch (const gos::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kBreach;
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return std::string(e.what()).find("cap exceeded") != std::string::npos ? kBudget
                                                                           : kBreach;
  }
  return kInputError;
}
