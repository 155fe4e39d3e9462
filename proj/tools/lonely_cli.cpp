// Command line front end: rule audits, patch verification, the accumulation
// demo and SVG rendering. Exit codes: 0 pass, 1 failed check or invalid
// input, 2 unreadable input file.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lonely/lonely.hpp"

namespace fs = std::filesystem;
using lonely::Patch;
using lonely::Scalar;
using lonely::SubstitutionRule;
using lonely::Vector;
using ojson = nlohmann::ordered_json;

#ifndef LONELY_DEFAULT_CORPUS
#define LONELY_DEFAULT_CORPUS "data"
#endif

namespace {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bare names ("table") resolve to <corpus>/rules/<name>.json.
std::string resolve(const std::string& arg) {
  if (fs::exists(arg) || arg.find('/') != std::string::npos) return arg;
  const char* env = std::getenv("LONELY_CORPUS_DIR");
  fs::path base = env && *env ? fs::path(env) : fs::path(LONELY_DEFAULT_CORPUS);
  fs::path candidate = base / "rules" / (arg + ".json");
  return fs::exists(candidate) ? candidate.string() : arg;
}

bool is_rule_path(const std::string& path) { return fs::path(path).extension() == ".json"; }

SubstitutionRule read_rule(const std::string& path) {
  try {
    return lonely::load_rule(path);
  } catch (const std::ios_base::failure& e) {
    throw IoFailure(e.what());
  }
}

lonely::PatchFile read_patch(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open patch file '" + path + "'");
  return lonely::read_patch_file(in);
}

struct Subject {
  std::string label;
  Patch patch;
};

// --- check-rule -----------------------------------------------------------

int cmd_check_rule(const std::string& arg) {
  const std::string path = resolve(arg);
  SubstitutionRule rule = read_rule(path);
  std::cout << "rule: " << path << " dim=" << rule.dim << " prototiles=" << rule.prototiles.size()
            << " factor=" << rule.factor << "\n";
  std::vector<lonely::AreaAudit> audits;
  try {
    audits = lonely::check_self_similar(rule);
  } catch (const lonely::SelfSimilarityError& e) {
    std::cout << "self-similar: failed " << lonely::to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  }
  for (const auto& a : audits)
    std::cout << "prototile " << rule.prototiles[a.prototile].name << ": pieces=" << a.pieces
              << " placed_area=" << a.placed_area << " inflated_area=" << a.inflated_area << "\n";
  auto flc = lonely::flc_criterion(rule);
  std::cout << "lattice: z_rank=" << flc.ranks.z_rank << " r_dim=" << flc.ranks.r_dim;
  if (flc.basis) {
    std::cout << " basis=";
    for (std::size_t i = 0; i < flc.basis->size(); ++i) std::cout << (i ? " " : "") << (*flc.basis)[i];
  }
  std::cout << "\n";
  std::cout << "self-similar: ok; FLC: " << lonely::to_string(flc.status) << "\n";
  return 0;
}

// --- verify ---------------------------------------------------------------

struct CheckResult {
  explicit CheckResult(std::string n) : name(std::move(n)) {}
  std::string name;
  bool pass = true;
  std::string detail;  // space separated key=value fields
  ojson json = ojson::object();
};

CheckResult check_lonely(const std::vector<Subject>& subjects, const lonely::CoverageOptions& opts) {
  CheckResult r{"lonely"};
  std::size_t points = 0, interior = 0, violations = 0, singles = 0;
  for (const auto& s : subjects) {
    auto scan = lonely::lonely_vertex_scan(s.patch, opts);
    points += scan.points_checked;
    interior += scan.interior_count;
    violations += scan.violations.size();
    singles += scan.boundary_singletons.size();
    for (const auto& v : scan.violations) r.detail += " violation=" + v.to_string();
  }
  r.pass = violations == 0;
  r.detail = "points=" + std::to_string(points) + " interior=" + std::to_string(interior) +
             " violations=" + std::to_string(violations) + " boundary_singletons=" + std::to_string(singles) +
             r.detail;
  r.json = {{"points", points}, {"interior", interior}, {"violations", violations}, {"boundary_singletons", singles}};
  return r;
}

CheckResult check_graph(const std::vector<Subject>& subjects, const lonely::CoverageOptions& opts) {
  CheckResult r{"graph"};
  std::size_t comps = 0, boundary = 0, stranded = 0;
  for (const auto& s : subjects) {
    if (s.patch.empty()) continue;
    auto rep = lonely::components_reach_boundary(s.patch, lonely::build_graph(s.patch), opts);
    for (const auto& c : rep.components) {
      ++comps;
      boundary += c.boundary_nodes;
      stranded += c.boundary_nodes == 0 ? 1 : 0;
    }
  }
  r.pass = stranded == 0;
  r.detail = "components=" + std::to_string(comps) + " boundary_nodes=" + std::to_string(boundary);
  if (stranded) r.detail += " stranded=" + std::to_string(stranded);
  r.json = {{"components", comps}, {"boundary_nodes", boundary}, {"stranded", stranded}};
  return r;
}

CheckResult check_cover(const std::vector<Subject>& subjects) {
  CheckResult r{"cover"};
  std::size_t gaps = 0;
  std::string first;
  for (const auto& s : subjects) {
    if (s.patch.dim() != 2) {
      r.detail = "skipped=planar-only";
      r.json = {{"skipped", true}};
      return r;
    }
    auto found = lonely::edge_cover_check(s.patch);
    if (!found.empty() && first.empty())
      first = " first_gap=tile" + std::to_string(found[0].tile) + ":" + found[0].gap_from.to_string() + "-" +
              found[0].gap_to.to_string();
    gaps += found.size();
  }
  r.pass = gaps == 0;
  r.detail = "gaps=" + std::to_string(gaps) + first;
  r.json = {{"gaps", gaps}};
  return r;
}

std::vector<Vector> splitting_normals(std::size_t dim) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < dim; ++i) {
    Vector e(dim);
    e[i] = Scalar(1);
    out.push_back(e);
  }
  return out;
}

// Complete stars never carry a single A-type cone, and each satisfies the
// hemisphere identity. Identities are memoized on the cone set, which is
// translation invariant.
CheckResult check_star(const std::vector<Subject>& subjects, const lonely::CoverageOptions& opts) {
  CheckResult r{"star"};
  std::size_t stars = 0, single_a = 0, broken = 0;
  std::map<std::string, bool> memo;
  std::string witness;
  for (const auto& s : subjects) {
    for (const auto& star : lonely::vertex_stars(s.patch, opts)) {
      if (!star.complete) continue;
      ++stars;
      if (star.a_count() == 1) ++single_a;
      std::vector<std::string> keys;
      for (const auto& e : star.entries) keys.push_back(e.cone.to_string());
      std::sort(keys.begin(), keys.end());
      std::string key;
      for (const auto& k : keys) key += k + "|";
      auto [it, fresh] = memo.try_emplace(key, true);
      if (!fresh) {
        broken += it->second ? 0 : 1;
        continue;
      }
      for (const auto& h : splitting_normals(s.patch.dim())) {
        auto z = lonely::monte_carlo_zero(lonely::hemisphere_identity(star, h), opts.samples, opts.seed);
        if (!z.zero) {
          it->second = false;
          if (witness.empty())
            witness = " witness=" + star.center.to_string() + ":" + lonely::format_zero_test(z);
          break;
        }
      }
      broken += it->second ? 0 : 1;
    }
  }
  r.pass = single_a == 0 && broken == 0;
  r.detail = "stars=" + std::to_string(stars) + " cone_sets=" + std::to_string(memo.size()) +
             " single_a=" + std::to_string(single_a) + " identity_failures=" + std::to_string(broken) + witness;
  r.json = {{"stars", stars}, {"cone_sets", memo.size()}, {"single_a", single_a}, {"identity_failures", broken}};
  return r;
}

CheckResult check_pairs(const SubstitutionRule* rule, const std::vector<Subject>& subjects, std::size_t order) {
  CheckResult r{"pairs"};
  std::vector<std::size_t> counts;
  if (rule) {
    counts = lonely::enumerate_pair_constellations(*rule, order);
  } else {
    for (const auto& s : subjects) counts.push_back(lonely::count_pair_constellations(s.patch));
  }
  std::string list;
  for (std::size_t i = 0; i < counts.size(); ++i) list += (i ? "," : "") + std::to_string(counts[i]);
  // Across orders the counts can only grow, since each supertile contains the previous one.
  r.pass = !rule || std::is_sorted(counts.begin(), counts.end());
  r.detail = "counts=" + list;
  r.json = {{"counts", counts}};
  return r;
}

struct VerifyArgs {
  std::string input;
  std::size_t order = 2;
  std::uint64_t seed = lonely::CoverageOptions{}.seed;
  std::size_t samples = lonely::CoverageOptions{}.samples;
  std::vector<std::string> checks{"lonely", "graph", "cover", "star"};
  bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
  const std::string path = resolve(a.input);
  lonely::CoverageOptions opts{a.samples, a.seed};
  std::vector<Subject> subjects;
  std::optional<SubstitutionRule> rule;
  std::string kind;
  if (is_rule_path(path)) {
    kind = "rule";
    rule = read_rule(path);
    lonely::check_self_similar(*rule);
    for (std::size_t i = 0; i < rule->prototiles.size(); ++i)
      subjects.push_back({rule->prototiles[i].name, lonely::supertile(*rule, i, a.order)});
  } else {
    kind = "patch";
    auto file = read_patch(path);
    subjects.push_back({path, Patch::build(std::move(file.tiles), file.dim)});
  }

  std::vector<CheckResult> results;
  for (const auto& c : a.checks) {
    if (c == "lonely") results.push_back(check_lonely(subjects, opts));
    else if (c == "graph") results.push_back(check_graph(subjects, opts));
    else if (c == "cover") results.push_back(check_cover(subjects));
    else if (c == "star") results.push_back(check_star(subjects, opts));
    else if (c == "pairs") results.push_back(check_pairs(rule ? &*rule : nullptr, subjects, a.order));
  }
  bool pass = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
  std::size_t tiles = 0;
  for (const auto& s : subjects) tiles += s.patch.size();

  if (a.json) {
    ojson out;
    out["input"] = path;
    out["kind"] = kind;
    if (rule) out["order"] = a.order;
    out["tiles"] = tiles;
    out["seed"] = a.seed;
    out["samples"] = a.samples;
    ojson checks = ojson::object();
    for (auto& r : results) {
      r.json["pass"] = r.pass;
      checks[r.name] = r.json;
    }
    out["checks"] = checks;
    out["result"] = pass ? "pass" : "fail";
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "input: " << path << " kind=" << kind;
    if (rule) std::cout << " order=" << a.order << " roots=" << subjects.size();
    std::cout << " tiles=" << tiles << "\n";
    std::cout << "seed: " << a.seed << " samples: " << a.samples << "\n";
    for (const auto& r : results)
      std::cout << "check " << r.name << ": " << (r.pass ? "pass" : "fail") << " " << r.detail << "\n";
    std::cout << "result: " << (pass ? "pass" : "fail") << "\n";
  }
  return pass ? 0 : 1;
}

// --- demo-fig1 ------------------------------------------------------------

int cmd_demo_fig1(std::size_t K, const std::string& radius_text) {
  Scalar radius = Scalar::parse(radius_text);
  Patch p = lonely::fig1_patch(K);
  Vector origin(2);
  auto star = lonely::build_star(p, origin);
  std::cout << "K: " << K << "\n";
  std::cout << "tiles: " << p.size() << "\n";
  std::cout << "vertex_count: " << p.vertex_count(origin) << "\n";
  std::cout << "interior: " << (star.complete ? "true" : "false") << "\n";
  std::cout << "tiles_meeting_disc: " << lonely::tiles_meeting_disc(p, origin, radius) << " radius=" << radius
            << "\n";
  std::cout << lonely::format_star(star);
  return 0;
}

// --- render ---------------------------------------------------------------

struct RenderArgs {
  std::string input;
  std::size_t order = 2;
  std::size_t root = 0;
  std::string out;
  lonely::RenderOptions opts;
};

int cmd_render(const RenderArgs& a) {
  Patch p;
  if (a.input == "fig1") {
    p = lonely::fig1_patch(a.order);
  } else {
    const std::string path = resolve(a.input);
    if (is_rule_path(path)) {
      auto rule = read_rule(path);
      p = lonely::supertile(rule, a.root, a.order);
    } else {
      auto file = read_patch(path);
      p = Patch::build(std::move(file.tiles), file.dim);
    }
  }
  std::string svg = lonely::render_svg(p, a.opts);
  if (a.out.empty()) {
    std::cout << svg;
    std::cerr << "polygons: " << p.size() << "\n";
  } else {
    std::ofstream f(a.out);
    if (!f || !(f << svg)) throw IoFailure("cannot write '" + a.out + "'");
    std::cout << "polygons: " << p.size() << "\n" << "written: " << a.out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lonely-vertex audits for polytopal tilings"};
  app.require_subcommand(1);

  std::string rule_arg;
  auto* check_rule = app.add_subcommand("check-rule", "Check self-similarity and the FLC lattice criterion");
  check_rule->add_option("rule", rule_arg, "Rule JSON file or corpus name")->required();

  VerifyArgs va;
  std::string checks_text = "lonely,graph,cover,star";
  auto* verify = app.add_subcommand("verify", "Run vertex checks on a supertile or a patch file");
  verify->add_option("input", va.input, "Rule JSON, corpus name, or patch file")->required();
  verify->add_option("-k,--order", va.order, "Supertile order for rule input")->capture_default_str();
  verify->add_option("--seed", va.seed, "Monte Carlo seed")->capture_default_str();
  verify->add_option("--samples", va.samples, "Monte Carlo samples")->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--checks", checks_text, "Comma separated: lonely,graph,cover,star,pairs")->capture_default_str();
  verify->add_flag("--json", va.json, "Emit a JSON report");

  std::size_t fig_k = 0;
  std::string radius = "1/4";
  auto* demo = app.add_subcommand("demo-fig1", "Accumulating strips with a single vertex at the origin");
  demo->add_option("K", fig_k, "Number of strips minus one")->required();
  demo->add_option("--radius", radius, "Disc radius")->capture_default_str();

  RenderArgs ra;
  auto* render = app.add_subcommand("render", "Write an SVG picture");
  render->add_option("input", ra.input, "Rule JSON, corpus name, patch file, or fig1")->required();
  render->add_option("-k,--order", ra.order, "Supertile order (strip count for fig1)")->capture_default_str();
  render->add_option("--root", ra.root, "Prototile index of the supertile")->capture_default_str();
  render->add_option("--out", ra.out, "Output SVG path (stdout when absent)");
  render->add_flag("--graph", ra.opts.graph, "Overlay the vertex-edge graph");
  render->add_flag("--markers", ra.opts.markers, "Mark interior points and lonely vertices");
  render->add_flag("--atype", ra.opts.a_type, "Mark A-type cone apexes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check_rule) return cmd_check_rule(rule_arg);
    if (*verify) {
      std::set<std::string> known{"lonely", "graph", "cover", "star", "pairs"};
      va.checks.clear();
      std::stringstream ss(checks_text);
      for (std::string c; std::getline(ss, c, ',');) {
        if (c.empty()) continue;
        if (!known.count(c)) {
          std::cerr << "error: unknown check '" << c << "'\n";
          return 1;
        }
        va.checks.push_back(c);
      }
      return cmd_verify(va);
    }
    if (*demo) return cmd_demo_fig1(fig_k, radius);
    if (*render) return cmd_render(ra);
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lonely::SelfSimilarityError& e) {
    std::cerr << "error: " << lonely::to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const lonely::OverlapError& e) {
    std::cerr << "error: OverlapError: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
