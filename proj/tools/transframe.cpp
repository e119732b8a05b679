// transframe: command-line front end for the transframe library.
//
// Verdict-bearing output goes to stdout as JSON; a one-line human summary
// goes to stderr. Exit codes: 0 pass, 1 fail, 2 input error, 3 frame not
// rooted, 4 budget exhausted.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "transframe/transframe.hpp"

namespace fs = std::filesystem;
using namespace transframe;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kNotRooted = 3, kBudget = 4 };

struct Common {
  bool close = false;
  bool timing = false;
  std::size_t jobs = 0;
};

std::optional<std::uint64_t> env_budget() {
  const char* s = std::getenv("TRANSFRAME_BUDGET");
  if (!s || !*s) return std::nullopt;
  try {
    std::size_t used = 0;
    auto v = std::stoull(s, &used);
    if (used != std::string(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput, std::string("TRANSFRAME_BUDGET is not a number: ") + s);
  }
}

std::uint64_t search_budget() { return env_budget().value_or(kDefaultSearchBudget); }

ValidityOptions validity_options(const std::string& engine) {
  ValidityOptions o;
  if (auto b = env_budget()) o.budget = *b;
  if (engine == "exhaustive") o.engine = Engine::Exhaustive;
  else if (engine == "pruned") o.engine = Engine::Pruned;
  return o;
}

std::size_t worker_count(const Common& c) {
  if (c.jobs > 0) return c.jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Auto: return "auto";
    case Engine::Exhaustive: return "exhaustive";
    case Engine::Pruned: return "pruned";
  }
  return "?";
}

// Runs a command body, adding the command echo and optional timing to its
// JSON result and mapping library errors onto exit codes.
template <typename Body>
int run(const std::string& name, const Common& common, Body body) {
  auto start = std::chrono::steady_clock::now();
  Json out{{"command", name}};
  int code = kPass;
  try {
    code = body(out);
  } catch (const BudgetExceededError& e) {
    out["error"] = {{"code", to_string(e.code())}, {"message", e.what()}, {"required", e.required()},
                    {"budget", e.budget()}};
    code = kBudget;
  } catch (const Error& e) {
    out["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    if (const auto* nt = dynamic_cast<const NonTransitiveError*>(&e))
      out["error"]["triple"] = {nt->triple().first, nt->triple().second, nt->triple().third};
    code = e.code() == ErrorCode::NotRooted ? kNotRooted : kInput;
  }
  if (out.contains("error")) std::cerr << name << ": " << out["error"]["message"].get<std::string>() << '\n';
  if (common.timing)
    out["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out["exit"] = code;
  std::cout << out.dump(2) << '\n';
  return code;
}

std::vector<std::string> names(const Frame& f, const std::vector<PointIndex>& pts) {
  std::vector<std::string> out;
  for (auto p : pts) out.push_back(f.name(p));
  return out;
}

std::size_t weak_width_at(const Frame& f, PointIndex w) {
  std::size_t best = 0;
  for (PointIndex u = 0; u < f.size(); ++u)
    if (f.sees_properly(w, u)) best = std::max(best, max_antichain(f, false, PointSet::single(u) | f.successors(u)).size());
  return best;
}

// ---------------------------------------------------------------------------

int cmd_analyze(const Common& c, const std::string& file, bool width_only) {
  return run("analyze", c, [&](Json& out) {
    Frame f = read_frame(file, c.close);
    out["file"] = file;
    if (width_only) {
      if (!is_rooted(f)) throw Error(ErrorCode::NotRooted, "width is defined for rooted frames");
      out["width"] = max_antichain(f, false).size();
      std::cerr << "width " << out["width"] << '\n';
      return kPass;
    }
    Skeleton sk(f);
    auto rs = roots(f);
    out["points"] = f.size();
    out["rank"] = rank_of_frame(f);
    out["longest_chain"] = names(f, longest_chain(f));
    out["roots"] = names(f, rs);
    out["rooted"] = !rs.empty();
    out["width"] = rs.empty() ? Json(nullptr) : Json(max_antichain(f, false).size());
    Json weak = Json::object();
    for (auto r : rs) weak[f.name(r)] = weak_width_at(f, r);
    out["weak_width"] = weak;
    auto irr = max_antichain(f, true);
    out["irreflexive_antichain"] = {{"size", irr.size()}, {"witness", f.names_of(irr.points)}};
    out["clusters"] = {{"total", sk.size()},
                       {"degenerate", sk.degenerate_count()},
                       {"nondegenerate", sk.size() - sk.degenerate_count()}};
    try {
      out["skeleton_tree"] = {{"holds", true}, {"rt", to_string(rt(f))}};
    } catch (const Error& e) {
      out["skeleton_tree"] = {{"holds", false}, {"reason", e.what()}};
    }
    std::cerr << f.size() << " points, rank " << out["rank"] << ", roots " << out["roots"].dump() << '\n';
    return kPass;
  });
}

struct FamilyChoice {
  std::string formula;
  std::size_t B = 0, wid = 0, widplus = 0, widbullet = 0;
};

Formula chosen_formula(const FamilyChoice& ch) {
  int given = !ch.formula.empty() + (ch.B > 0) + (ch.wid > 0) + (ch.widplus > 0) + (ch.widbullet > 0);
  if (given != 1) throw Error(ErrorCode::InvalidInput, "give exactly one of FORMULA, --B, --wid, --widplus, --widbullet");
  if (!ch.formula.empty()) return parse_formula(ch.formula);
  if (ch.B) return mk_B(ch.B);
  if (ch.wid) return mk_Wid(ch.wid);
  if (ch.widplus) return mk_Wid_plus(ch.widplus);
  return mk_Wid_bullet(ch.widbullet);
}

int cmd_check(const Common& c, const std::string& file, const FamilyChoice& ch, const std::string& point,
              const std::string& engine) {
  return run("check", c, [&](Json& out) {
    Frame f = read_frame(file, c.close);
    Formula phi = chosen_formula(ch);
    auto opts = validity_options(engine);
    out["file"] = file;
    out["formula"] = to_string(phi);
    ValidityResult r;
    if (point.empty()) {
      r = frame_valid(f, phi, opts);
    } else {
      out["point"] = point;
      r = point_valid(f, f.index_of(point), phi, opts);
    }
    out["valid"] = r.valid;
    out["engine"] = engine_name(r.engine);
    out["bits"] = r.bits;
    out["work"] = r.work;
    if (r.countermodel)
      out["countermodel"] = {{"point", r.countermodel->point_name},
                             {"valuation", valuation_to_json(r.countermodel->valuation)}};
    std::cerr << (r.valid ? "valid" : "invalid") << '\n';
    return r.valid ? kPass : kFail;
  });
}

int cmd_frame_formula(const Common& c, const std::string& file) {
  return run("frame-formula", c, [&](Json& out) {
    Frame f = read_frame(file, c.close);
    auto spec = canonical_spec(f);
    Formula phi = frame_formula(spec);
    out["file"] = file;
    out["ordering"] = names(f, spec.ordering);
    out["formula"] = to_string(phi);
    out["size"] = formula_size(phi);
    std::cerr << "frame formula with " << spec.ordering.size() << " variables\n";
    return kPass;
  });
}

int cmd_reduce(const Common& c, const std::string& src, const std::string& tgt) {
  return run("reduce", c, [&](Json& out) {
    Frame s = read_frame(src, c.close);
    Frame t = read_frame(tgt, c.close);
    auto r = find_reduction(s, t, search_budget());
    out["source"] = src;
    out["target"] = tgt;
    out["verdict"] = to_string(r.verdict);
    out["expansions"] = r.expansions;
    if (r.reduction) out["map"] = map_to_json(*r.reduction);
    switch (r.verdict) {
      case Verdict::Yes: std::cerr << "reduction found\n"; return kPass;
      case Verdict::No: std::cerr << "no reduction\n"; return kFail;
      case Verdict::Budget: std::cerr << "search budget exhausted\n"; return kBudget;
    }
    return kInput;
  });
}

int cmd_audit(const Common& c, const std::string& manifest, const std::string& mode) {
  return run("audit", c, [&](Json& out) {
    auto frames = read_manifest(manifest, c.close);
    AuditMode m = mode == "backward" ? AuditMode::Backward : AuditMode::Full;
    auto a = audit_sequence(frames, m, search_budget(), worker_count(c));
    out["manifest"] = manifest;
    out["mode"] = to_string(m);
    out["frames"] = frames.size();
    out["verdict"] = to_string(a.verdict);
    out["expansions"] = a.expansions;
    out["witness"] = a.witness ? witness_to_json(*a.witness) : Json(nullptr);
    Json inc = Json::array();
    for (auto [i, j] : a.inconclusive) inc.push_back({i, j});
    out["inconclusive"] = inc;
    std::cerr << "audit " << to_string(a.verdict) << '\n';
    if (a.verdict == AuditVerdict::Pass) return kPass;
    return a.verdict == AuditVerdict::Fail ? kFail : kBudget;
  });
}

OmegaTree load_tree(const std::string& arg, bool use_srt, bool close) {
  if (fs::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      Json j = read_json_file(arg);
      if (j.contains("points")) {
        Frame f = frame_from_json(j, close);
        return use_srt ? srt(f) : rt(f);
      }
      return tree_from_json(j);
    }
    return parse_tree(text);
  }
  return parse_tree(arg);
}

int cmd_embed(const Common& c, const std::string& a, const std::string& b, bool use_srt) {
  return run("embed", c, [&](Json& out) {
    OmegaTree ta = load_tree(a, use_srt, c.close);
    OmegaTree tb = load_tree(b, use_srt, c.close);
    out["representation"] = use_srt ? "srt" : "rt";
    out["a"] = to_string(ta);
    out["b"] = to_string(tb);
    bool fwd = tree_embed(ta, tb);
    out["embeds"] = fwd;
    out["reverse"] = tree_embed(tb, ta);
    std::cerr << out["a"].get<std::string>() << (fwd ? " embeds into " : " does not embed into ")
              << out["b"].get<std::string>() << '\n';
    return fwd ? kPass : kFail;
  });
}

int cmd_gen_h(const Common& c, std::size_t n, const std::string& output) {
  if (output.empty()) {
    try {
      std::cout << frame_to_json(make_H(n)).dump(2) << '\n';
      return kPass;
    } catch (const Error& e) {
      std::cerr << "gen-h: " << e.what() << '\n';
      return kInput;
    }
  }
  return run("gen-h", c, [&](Json& out) {
    Frame h = make_H(n);
    write_json_file(output, frame_to_json(h));
    out["n"] = n;
    out["file"] = output;
    out["points"] = h.size();
    std::cerr << "wrote H_" << n << " (" << h.size() << " points) to " << output << '\n';
    return kPass;
  });
}

CorpusSpec corpus_spec_from_json(const Json& j) {
  try {
    CorpusSpec s;
    s.max_points = j.value("max_points", s.max_points);
    if (j.contains("rank_bound") && !j["rank_bound"].is_null()) s.rank_bound = j["rank_bound"].get<std::size_t>();
    s.require_weak_width_1 = j.value("require_weak_width_1", false);
    if (j.contains("require_wid_bullet") && !j["require_wid_bullet"].is_null())
      s.require_wid_bullet = j["require_wid_bullet"].get<std::size_t>();
    s.seed = j.value("seed", std::uint64_t{0});
    s.count = j.value("count", s.count);
    s.rooted = j.value("rooted", true);
    s.attempts_per_frame = j.value("attempts_per_frame", s.attempts_per_frame);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, e.what());
  }
}

Json corpus_spec_to_json(const CorpusSpec& s) {
  return Json{{"max_points", s.max_points},
              {"rank_bound", s.rank_bound ? Json(*s.rank_bound) : Json(nullptr)},
              {"require_weak_width_1", s.require_weak_width_1},
              {"require_wid_bullet", s.require_wid_bullet ? Json(*s.require_wid_bullet) : Json(nullptr)},
              {"seed", s.seed},
              {"count", s.count},
              {"rooted", s.rooted},
              {"attempts_per_frame", s.attempts_per_frame}};
}

int cmd_gen_corpus(const Common& c, const std::string& spec_file, const std::string& dir) {
  return run("gen-corpus", c, [&](Json& out) {
    CorpusSpec spec = corpus_spec_from_json(read_json_file(spec_file));
    auto report = generate_corpus_report(spec);
    fs::create_directories(dir);
    Json files = Json::array();
    Json log = Json::array();
    for (std::size_t k = 0; k < report.frames.size(); ++k) {
      const Frame& f = report.frames[k];
      std::ostringstream name;
      name << "frame_" << std::setw(4) << std::setfill('0') << k << ".json";
      write_json_file(fs::path(dir) / name.str(), frame_to_json(f));
      files.push_back(name.str());
      // Replay every constraint with the checkers so the manifest records
      // what was verified, not what was intended.
      Json entry{{"file", name.str()}, {"points", f.size()}, {"rooted", is_rooted(f)}, {"rank", rank_of_frame(f)}};
      if (spec.require_weak_width_1) entry["weak_width_1"] = weak_width_everywhere(f, 1);
      if (spec.require_wid_bullet) entry["irreflexive_antichain_bound"] = irr_antichain_everywhere(f, *spec.require_wid_bullet);
      entry["degenerate_clusters"] = Skeleton(f).degenerate_count();
      log.push_back(entry);
    }
    Json manifest{{"spec", corpus_spec_to_json(spec)}, {"seed", spec.seed}, {"attempts", report.attempts},
                  {"frames", files}, {"checks", log}};
    write_json_file(fs::path(dir) / "manifest.json", manifest);
    out["directory"] = dir;
    out["frames"] = report.frames.size();
    out["attempts"] = report.attempts;
    std::cerr << "wrote " << report.frames.size() << " frames to " << dir << '\n';
    return kPass;
  });
}

int cmd_dot(const Common& c, const std::string& file) {
  try {
    Frame f = read_frame(file, c.close);
    std::cout << to_dot(f, fs::path(file).stem().string());
    return kPass;
  } catch (const Error& e) {
    std::cerr << "dot: " << e.what() << '\n';
    return e.code() == ErrorCode::NotRooted ? kNotRooted : kInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transitive Kripke frames: conditions, formulas, reductions and tree orders"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--close", common.close, "Take the transitive closure of input frames");
  app.add_flag("--timing", common.timing, "Report wall-clock seconds in the JSON result");
  app.add_option("--jobs", common.jobs, "Worker threads for parallel searches (default: all cores)");

  int code = kPass;
  std::string file, file2, formula, point, engine = "auto", mode = "full", output;
  bool width_only = false, use_rt = false, use_srt = false;
  FamilyChoice fam;
  std::size_t n = 0;

  auto* analyze = app.add_subcommand("analyze", "Rank, width, weak width, antichains and cluster census");
  analyze->add_option("frame", file, "Frame JSON file")->required();
  analyze->add_flag("--width-only", width_only, "Report only the width (needs a rooted frame)");
  analyze->callback([&] { code = cmd_analyze(common, file, width_only); });

  auto* check = app.add_subcommand("check", "Validity of a formula on a frame or at a point");
  check->add_option("frame", file, "Frame JSON file")->required();
  check->add_option("formula", fam.formula, "Formula text");
  check->add_option("--B", fam.B, "Depth formula B_n");
  check->add_option("--wid", fam.wid, "Width formula Wid_n");
  check->add_option("--widplus", fam.widplus, "Weak width formula Wid_n+");
  check->add_option("--widbullet", fam.widbullet, "Irreflexive antichain formula Wid_n*");
  check->add_option("--point", point, "Check at this point only");
  check->add_option("--engine", engine, "auto, exhaustive or pruned")
      ->check(CLI::IsMember({"auto", "exhaustive", "pruned"}));
  check->callback([&] { code = cmd_check(common, file, fam, point, engine); });

  auto* ff = app.add_subcommand("frame-formula", "Frame formula under the canonical ordering");
  ff->add_option("frame", file, "Rooted frame JSON file")->required();
  ff->callback([&] { code = cmd_frame_formula(common, file); });

  auto* reduce = app.add_subcommand("reduce", "Search for a reduction of SOURCE onto TARGET");
  reduce->add_option("source", file, "Source frame")->required();
  reduce->add_option("target", file2, "Target frame")->required();
  reduce->callback([&] { code = cmd_reduce(common, file, file2); });

  auto* audit = app.add_subcommand("audit", "Irreducibility audit of a frame sequence");
  audit->add_option("manifest", file, "Manifest JSON with a \"frames\" list")->required();
  audit->add_option("--mode", mode, "backward or full")->check(CLI::IsMember({"backward", "full"}));
  audit->callback([&] { code = cmd_audit(common, file, mode); });

  auto* embed = app.add_subcommand("embed", "Tree order between two trees or frame representations");
  embed->add_option("a", file, "Tree text, tree JSON file or frame JSON file")->required();
  embed->add_option("b", file2, "Tree text, tree JSON file or frame JSON file")->required();
  auto* rt_flag = embed->add_flag("--rt", use_rt, "Represent frames by rt (default)");
  embed->add_flag("--srt", use_srt, "Represent frames by srt")->excludes(rt_flag);
  embed->callback([&] { code = cmd_embed(common, file, file2, use_srt); });

  auto* gen_h = app.add_subcommand("gen-h", "Write the frame H_n");
  gen_h->add_option("n", n, "Index")->required();
  gen_h->add_option("-o,--output", output, "Output file (default: stdout)");
  gen_h->callback([&] { code = cmd_gen_h(common, n, output); });

  auto* gen_corpus = app.add_subcommand("gen-corpus", "Random constrained frames from a corpus spec");
  gen_corpus->add_option("spec", file, "Corpus spec JSON")->required();
  gen_corpus->add_option("-o,--output", output, "Output directory")->required();
  gen_corpus->callback([&] { code = cmd_gen_corpus(common, file, output); });

  auto* dot = app.add_subcommand("dot", "Graphviz rendering of a frame");
  dot->add_option("frame", file, "Frame JSON file")->required();
  dot->callback([&] { code = cmd_dot(common, file); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }
  return code;
}
