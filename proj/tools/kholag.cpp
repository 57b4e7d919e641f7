#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kholag/cache.hpp"
#include "kholag/cobordism.hpp"
#include "kholag/error.hpp"
#include "kholag/khovanov.hpp"
#include "kholag/lee.hpp"
#include "kholag/report.hpp"
#include "kholag/transverse.hpp"

#ifndef KHOLAG_CORPUS_FILE
#define KHOLAG_CORPUS_FILE ""
#endif

using nlohmann::json;
using namespace kholag;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitObstructed = 2;

struct Options {
  bool json = false;
  int max_crossings = 16;
  bool no_cache = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path corpus_path() {
  if (const char* env = std::getenv("KHOLAG_CORPUS"); env && *env) return env;
  return KHOLAG_CORPUS_FILE;
}

json load_corpus() {
  const auto path = corpus_path();
  if (path.empty() || !std::filesystem::exists(path)) return json::object();
  return json::parse(read_file(path.string()));
}

// A diagram argument: corpus name, @file, braid text or diagram JSON.
struct Input {
  LinkDiagram diagram;
  std::optional<BraidWord> braid;
  std::optional<int> tb, r;
};

Input resolve(const std::string& arg, const Options& opt) {
  Input in;
  std::string text = arg;
  const json corpus = load_corpus();
  if (corpus.contains(arg)) {
    const auto& e = corpus[arg];
    text = e.at("braid").get<std::string>();
    if (e.contains("tb")) in.tb = e["tb"].get<int>();
    if (e.contains("r")) in.r = e["r"].get<int>();
  } else if (!arg.empty() && arg[0] == '@') {
    text = read_file(arg.substr(1));
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    in.diagram = parse_diagram_json(text);
    if (in.diagram.embedding()) in.braid = in.diagram.embedding()->braid;
  } else {
    const BraidWord b = parse_frame(text);
    in.braid = b;
    in.diagram = braid_closure(b);
  }
  if (in.diagram.crossing_count() > opt.max_crossings)
    throw DomainError("diagram has " + std::to_string(in.diagram.crossing_count()) + " crossings; the limit is " +
                      std::to_string(opt.max_crossings) + " (raise it with --max-crossings)");
  return in;
}

const BraidWord& require_braid(const Input& in) {
  if (!in.braid) throw DomainError("transverse invariants need a braid closure, not a PD code");
  return *in.braid;
}

// Computes `make()` or fetches it from the cache when the input is a braid.
json cached(const Options& opt, const std::string& kind, const Input& in, const std::function<json()>& make) {
  std::optional<Cache> cache;
  if (!opt.no_cache && in.braid) cache = Cache::from_env();
  const std::string key = in.braid ? cache_key(kind, *in.braid) : std::string();
  if (cache)
    if (auto hit = cache->get(key)) return json::parse(*hit);
  json out = make();
  if (cache) cache->put(key, out.dump());
  return out;
}

BigradedHomology homology_from_json(const json& j) {
  BigradedHomology h;
  for (const auto& g : j.at("groups")) {
    HomologyGroup grp;
    grp.free_rank = g.at("rank");
    grp.torsion = g.at("torsion").get<std::vector<std::int64_t>>();
    h.groups[{g.value("i", 0), g.at("j").get<int>()}] = grp;
  }
  return h;
}

void emit(const Options& opt, const json& j, const std::string& text) {
  if (opt.json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

int cmd_kh(const Options& opt, const std::string& arg) {
  const Input in = resolve(arg, opt);
  const json j = cached(opt, "kh", in, [&] { return json::parse(homology_to_json(khovanov_homology(in.diagram))); });
  emit(opt, j, homology_grid(homology_from_json(j)));
  return kExitOk;
}

int cmd_lee(const Options& opt, const std::string& arg) {
  const Input in = resolve(arg, opt);
  const json j = cached(opt, "lee", in, [&] {
    const CubeComplex lee = build_lee_complex(in.diagram);
    const BigradedHomology h = homology(lee.complex(), Grading::homological);
    json out;
    out["components"] = in.diagram.component_count();
    out["ranks"] = json::array();
    for (const auto& [key, g] : h.groups)
      if (!g.is_zero()) out["ranks"].push_back({{"j", key.second}, {"rank", g.free_rank}});
    out["total_rank"] = h.total_rank();
    return out;
  });
  std::ostringstream os;
  os << "Lee homology over Q (total rank " << j["total_rank"] << ")\n";
  for (const auto& e : j["ranks"]) os << "  j = " << e["j"] << ": rank " << e["rank"] << "\n";
  emit(opt, j, os.str());
  return kExitOk;
}

int cmd_s(const Options& opt, const std::string& arg) {
  const Input in = resolve(arg, opt);
  const json j = cached(opt, "s", in, [&] {
    const SInvariantResult s = s_invariant(in.diagram);
    return json{{"s", s.s}, {"s_min", s.s_min}, {"s_max", s.s_max}};
  });
  std::ostringstream os;
  os << "s = " << j["s"] << "  (filtration gradings " << j["s_min"] << ", " << j["s_max"] << ")\n";
  emit(opt, j, os.str());
  return kExitOk;
}

int cmd_ng(const Options& opt, const std::string& arg, std::optional<int> tb) {
  const Input in = resolve(arg, opt);
  const json kh = cached(opt, "kh", in, [&] { return json::parse(homology_to_json(khovanov_homology(in.diagram))); });
  const BigradedHomology h = homology_from_json(kh);
  json j{{"ng_line", ng_line(h)}};
  if (!tb) tb = in.tb;
  if (tb) {
    j["tb"] = *tb;
    j["top_obstruction"] = to_string(top_obstruction(h, *tb));
  }
  std::ostringstream os;
  os << "ng line = " << j["ng_line"] << "\n";
  if (tb) os << "filling check with tb = " << *tb << ": " << j["top_obstruction"].get<std::string>() << "\n";
  emit(opt, j, os.str());
  return kExitOk;
}

int cmd_psi(const Options& opt, const std::string& arg) {
  const Input in = resolve(arg, opt);
  const BraidWord b = require_braid(in);
  const json j = cached(opt, "psi", in, [&] {
    const CubeComplex kh = build_khovanov_complex(in.diagram);
    const TransverseClass psi = psi_cycle(in.diagram, kh);
    json out{{"sl", psi.sl},
             {"bidegree", {psi.quantum_anchor, psi.homological_degree}},
             {"vanishes", class_is_zero(kh.complex(), psi.chain)}};
    const CubeComplex lee = build_lee_complex(in.diagram);
    const TransverseClass tilde = psi_tilde(in.diagram, lee);
    out["psi_tilde_filtration_grading"] = filtration_grading(lee.complex(), tilde.chain);
    return out;
  });
  std::ostringstream os;
  os << "sl = " << j["sl"] << ", psi in bidegree (" << j["bidegree"][0] << ", " << j["bidegree"][1] << ")\n";
  os << "psi " << (j["vanishes"].get<bool>() ? "vanishes" : "is nonzero") << "\n";
  os << "psi~ filtration grading = " << j["psi_tilde_filtration_grading"] << "\n";
  emit(opt, j, os.str());
  (void)b;
  return kExitOk;
}

int cmd_psi_pq(const Options& opt, const std::string& arg, int p, int q) {
  const Input in = resolve(arg, opt);
  require_braid(in);
  if (p >= q) throw DomainError("window needs p < q");
  const WindowClass w = psi_pq(in.diagram, p, q);
  const WindowInfo info = window_info(p, q);
  json j{{"p", p},
         {"q", q},
         {"sl", w.cls.sl},
         {"window", {w.window.low, w.window.high}},
         {"defining_range", info.defining_range},
         {"vanishing_range", info.vanishing_range}};
  const bool cycle = is_cycle(w.window.complex, w.cls.chain);
  j["defined"] = cycle;
  if (cycle) j["vanishes"] = class_is_zero(w.window.complex, w.cls.chain);
  std::ostringstream os;
  os << "window (" << p << "," << q << ") = F_" << w.window.low << " / F_" << w.window.high << ", sl = " << w.cls.sl;
  if (info.defining_range) os << ", defining range";
  if (info.vanishing_range) os << ", vanishing range";
  os << "\n";
  if (!cycle) os << "truncated class is not a cycle in this window\n";
  else os << "psi~_{p,q} " << (j["vanishes"].get<bool>() ? "vanishes" : "is nonzero") << "\n";
  emit(opt, j, os.str());
  return kExitOk;
}

int cmd_movie(const Options& opt, const std::string& path, const std::vector<std::string>& pqs);

std::pair<int, int> parse_pq(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("no comma");
    std::size_t used = 0;
    const int p = std::stoi(s.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("p");
    const std::string qs = s.substr(comma + 1);
    const int q = std::stoi(qs, &used);
    if (used != qs.size()) throw std::invalid_argument("q");
    return {p, q};
  } catch (const std::exception&) {
    throw ParseError("window must be written P,Q (got \"" + s + "\")");
  }
}

int cmd_movie(const Options& opt, const std::string& path, const std::vector<std::string>& pqs) {
  const Movie mv = parse_movie_json(read_file(path));
  for (const auto& f : mv.frames)
    if (!f.is_empty_link() && static_cast<int>(f.letters.size()) > opt.max_crossings)
      throw DomainError("frame \"" + f.to_string() + "\" exceeds the crossing limit");
  json j;
  j["frames"] = json::array();
  for (const auto& f : mv.frames) j["frames"].push_back(f.is_empty_link() ? "0:" : f.to_string());
  j["euler_characteristic"] = mv.euler_characteristic();
  j["ascending_positive"] = mv.ascending_positive();
  const ChainMap f = compose_movie_map(mv, Theory::khovanov);
  j["bidegree"] = {map_bidegree(f).first, map_bidegree(f).second};
  const FunctorialityResult r = check_functoriality(mv);
  j["functoriality"] = to_string(r.verdict);
  if (mv.bottom().is_empty_link()) j["filling_value"] = check_filling_value(mv);
  std::vector<std::pair<int, int>> windows = kDefaultWindows;
  for (const auto& s : pqs) windows.push_back(parse_pq(s));
  j["filtered"] = json::array();
  for (auto [p, q] : windows) {
    json w{{"p", p}, {"q", q}};
    try {
      w["verdict"] = to_string(check_filtered_functoriality(mv, p, q).verdict);
    } catch (const DomainError& e) {
      w["verdict"] = "undefined";
      w["reason"] = e.what();
    }
    j["filtered"].push_back(w);
  }
  std::ostringstream os;
  os << "frames:";
  for (const auto& fr : j["frames"]) os << " [" << fr.get<std::string>() << "]";
  os << "\nEuler characteristic " << j["euler_characteristic"] << ", map bidegree (" << j["bidegree"][0] << ", 0)\n";
  if (!mv.ascending_positive())
    os << "warning: movie has deaths or negative bands; the functoriality theorem does not apply\n";
  os << "psi: " << j["functoriality"].get<std::string>() << "\n";
  if (j.contains("filling_value")) os << "filling value: " << j["filling_value"] << "\n";
  for (const auto& w : j["filtered"])
    os << "window (" << w["p"] << "," << w["q"] << "): " << w["verdict"].get<std::string>() << "\n";
  emit(opt, j, os.str());
  return kExitOk;
}

LinkEnd make_end(const std::string& arg, std::optional<int> tb, std::optional<int> r, const Options& opt) {
  LinkEnd e;
  if (arg == "empty" || arg == "0:" || arg == "∅") return e;
  const Input in = resolve(arg, opt);
  e.braid = require_braid(in);
  e.tb = tb ? tb : in.tb;
  e.r = r ? r : in.r;
  return e;
}

int cmd_obstruct(const Options& opt, const std::string& bottom, const std::string& top, int E,
                 std::optional<int> tbm, std::optional<int> rm, std::optional<int> tbp, std::optional<int> rp,
                 const std::vector<std::string>& pqs) {
  std::vector<std::pair<int, int>> windows;
  for (const auto& s : pqs) windows.push_back(parse_pq(s));
  const ObstructionReport r = obstruction_report(make_end(bottom, tbm, rm, opt), make_end(top, tbp, rp, opt), E, windows);
  if (opt.json) std::cout << report_to_json(r) << "\n";
  else std::cout << report_to_text(r);
  return r.obstructed ? kExitObstructed : kExitOk;
}

int cmd_effectiveness(const Options& opt, const std::string& arg) {
  const Input in = resolve(arg, opt);
  const EffectivenessReport e = effectiveness_classify(require_braid(in));
  std::ostringstream os;
  os << "psi nonzero: " << (e.psi_nonzero ? "yes" : "no") << "\n"
     << "s = " << e.s << ", sl = " << e.sl << ", s = sl + 1: " << (e.s_equals_sl_plus_1 ? "yes" : "no") << "\n"
     << "verdict: " << to_string(e.verdict) << "\n";
  emit(opt, json::parse(effectiveness_to_json(e)), os.str());
  return kExitOk;
}

int cmd_corpus(const Options& opt) {
  const json corpus = load_corpus();
  std::ostringstream os;
  for (const auto& [name, e] : corpus.items()) {
    os << name << ": " << e.at("braid").get<std::string>();
    if (e.contains("description")) os << "  (" << e["description"].get<std::string>() << ")";
    os << "\n";
  }
  emit(opt, corpus, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov and Lee homology of braid closures, transverse invariants and Lagrangian cobordism obstructions"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Machine-readable output");
  app.add_option("--max-crossings", opt.max_crossings, "Refuse diagrams with more crossings")->check(CLI::PositiveNumber);
  app.add_flag("--no-cache", opt.no_cache, std::string("Ignore $") + kCacheEnvVar);

  std::string diagram;
  const char* diagram_help = "Braid \"n: l1 l2 ...\", diagram JSON, @file or corpus name";
  int result = kExitOk;
  std::function<int()> run;

  auto simple = [&](const char* name, const char* help, std::function<int()> fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("diagram", diagram, diagram_help)->required();
    sub->callback([&run, fn] { run = fn; });
    return sub;
  };
  simple("kh", "Khovanov homology table", [&] { return cmd_kh(opt, diagram); });
  simple("lee", "Lee homology ranks", [&] { return cmd_lee(opt, diagram); });
  simple("s", "Rasmussen s-invariant", [&] { return cmd_s(opt, diagram); });
  simple("psi", "Plamenevskaya class and its vanishing", [&] { return cmd_psi(opt, diagram); });

  std::optional<int> ng_tb;
  auto* ng = simple("ng", "Ng's Thurston-Bennequin bound from Khovanov homology", [&] { return cmd_ng(opt, diagram, ng_tb); });
  ng->add_option("--tb", ng_tb, "Compare with this tb (filling check)");

  int p = 0, q = 1;
  auto* pq = simple("psi-pq", "Filtered class in the window (p, q)", [&] { return cmd_psi_pq(opt, diagram, p, q); });
  pq->add_option("-p", p, "Window start")->required();
  pq->add_option("-q", q, "Window end")->required();

  std::string script;
  std::vector<std::string> movie_windows;
  auto* movie = app.add_subcommand("movie-check", "Chain maps and functoriality checks for a movie script");
  movie->add_option("script", script, "Movie JSON file")->required();
  movie->add_option("--pq", movie_windows, "Extra window P,Q (repeatable)");
  movie->callback([&] { run = [&] { return cmd_movie(opt, script, movie_windows); }; });

  std::string bottom, top;
  int E = 0;
  std::optional<int> tbm, rm, tbp, rp;
  std::vector<std::string> windows;
  auto* ob = app.add_subcommand("obstruct", "Obstruction battery for a decomposable Lagrangian cobordism");
  ob->add_option("--bottom", bottom, "Bottom braid, corpus name or 'empty'")->required();
  ob->add_option("--top", top, "Top braid or corpus name")->required();
  ob->add_option("-E", E, "Euler characteristic of the cobordism")->required()->allow_extra_args(false);
  ob->add_option("--tb-bottom", tbm, "tb of the bottom Legendrian");
  ob->add_option("--r-bottom", rm, "rotation number of the bottom Legendrian");
  ob->add_option("--tb-top", tbp, "tb of the top Legendrian");
  ob->add_option("--r-top", rp, "rotation number of the top Legendrian");
  ob->add_option("--pq", windows, "Extra window P,Q (repeatable)");
  ob->callback([&] { run = [&] { return cmd_obstruct(opt, bottom, top, E, tbm, rm, tbp, rp, windows); }; });

  simple("effectiveness", "Whether psi can beat the classical invariants plus s", [&] { return cmd_effectiveness(opt, diagram); });

  auto* corpus = app.add_subcommand("corpus", "List the bundled example braids");
  corpus->callback([&] { run = [&] { return cmd_corpus(opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  try {
    result = run();
  } catch (const kholag::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return result;
}
