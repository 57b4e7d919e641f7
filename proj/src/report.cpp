#include "kholag/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kholag/error.hpp"
#include "kholag/transverse.hpp"

namespace kholag {

namespace {

int components(const BraidWord& b) { return b.is_empty_link() ? 0 : b.components(); }

struct EndFacts {
  int sl = 0;
  bool psi_zero = false;
  std::vector<std::optional<bool>> window_zero;  // nullopt: class undefined
  std::optional<int> s;
};

EndFacts compute_end(const BraidWord& b, const std::vector<std::pair<int, int>>& windows, bool want_s) {
  EndFacts f;
  const LinkDiagram d = braid_closure(b);
  f.sl = b.is_empty_link() ? 0 : self_linking(b);
  f.psi_zero = psi_vanishes(d);
  const CubeComplex lee = build_lee_complex(d);
  for (auto [p, q] : windows) {
    const WindowClass w = psi_pq(d, lee, p, q);
    if (!is_cycle(w.window.complex, w.cls.chain)) f.window_zero.push_back(std::nullopt);
    else f.window_zero.push_back(class_is_zero(w.window.complex, w.cls.chain));
  }
  if (want_s) f.s = s_invariant(d).s;
  return f;
}

}  // namespace

bool summarize(bool classical, bool psi, const std::vector<bool>& windows, bool s_based, bool ng) {
  bool any = classical || psi || s_based || ng;
  for (bool w : windows) any = any || w;
  return any;
}

ObstructionReport obstruction_report(const LinkEnd& bottom, const LinkEnd& top, int E,
                                     const std::vector<std::pair<int, int>>& extra) {
  if (!bottom.braid.is_empty_link()) validate(bottom.braid);
  if (top.braid.is_empty_link()) throw DomainError("top of a cobordism must be nonempty");
  validate(top.braid);
  const int cm = components(bottom.braid), cp = components(top.braid);
  if (((E % 2) + 2) % 2 != (cm + cp) % 2)
    throw DomainError("Euler characteristic " + std::to_string(E) + " has the wrong parity for " +
                      std::to_string(cm) + " and " + std::to_string(cp) + " components");

  ObstructionReport r;
  r.bottom = bottom;
  r.top = top;
  r.E = E;
  std::vector<std::pair<int, int>> windows = kDefaultWindows;
  for (const auto& w : extra)
    if (std::find(windows.begin(), windows.end(), w) == windows.end()) windows.push_back(w);
  for (auto [p, q] : windows)
    if (p >= q) throw DomainError("window (" + std::to_string(p) + "," + std::to_string(q) + ") needs p < q");

  const bool knots = cm == 1 && cp == 1;
  auto fb = std::async(std::launch::async, compute_end, bottom.braid, windows, knots);
  auto ft = std::async(std::launch::async, compute_end, top.braid, windows, knots);
  std::future<BigradedHomology> kh_top;
  const bool ng_wanted = bottom.braid.is_empty_link();
  if (ng_wanted) kh_top = std::async(std::launch::async, [&] { return khovanov_homology(braid_closure(top.braid)); });
  const EndFacts b = fb.get();
  const EndFacts t = ft.get();

  // Classical invariants. The empty Legendrian has tb = r = 0.
  auto tb_of = [](const LinkEnd& e) { return e.braid.is_empty_link() ? std::optional<int>(0) : e.tb; };
  auto r_of = [](const LinkEnd& e) { return e.braid.is_empty_link() ? std::optional<int>(0) : e.r; };
  const auto tbm = tb_of(bottom), tbp = tb_of(top), rm = r_of(bottom), rp = r_of(top);
  if (rm && rp) r.classical.rot_equal = *rm == *rp;
  else r.notices.push_back("rotation numbers not supplied; rot check skipped");
  if (tbm && tbp) r.classical.tb_difference_matches_E = *tbm == *tbp + E;
  else r.notices.push_back("tb not supplied; tb check skipped");
  r.classical.sl_difference_matches_E = t.sl == b.sl - E;
  for (const auto* e : {&bottom, &top})
    if (e->tb && e->r && !e->braid.is_empty_link() && *e->tb - *e->r != self_linking(e->braid))
      r.notices.push_back("braid \"" + e->braid.to_string() + "\" has sl " + std::to_string(self_linking(e->braid)) +
                          " but tb - r = " + std::to_string(*e->tb - *e->r));
  r.classical.obstructed =
      !(r.classical.rot_equal && r.classical.tb_difference_matches_E && r.classical.sl_difference_matches_E);

  r.psi.psi_minus_nonzero = !b.psi_zero;
  r.psi.psi_plus_zero = t.psi_zero;
  r.psi.obstructed = r.psi.psi_minus_nonzero && r.psi.psi_plus_zero;

  for (std::size_t i = 0; i < windows.size(); ++i) {
    ObstructionReport::Window w;
    w.p = windows[i].first;
    w.q = windows[i].second;
    w.info = window_info(w.p, w.q);
    w.defined = b.window_zero[i].has_value() && t.window_zero[i].has_value();
    if (w.defined) {
      w.minus_nonzero = !*b.window_zero[i];
      w.plus_zero = *t.window_zero[i];
      w.obstructed = w.minus_nonzero && w.plus_zero;
    } else {
      r.notices.push_back("window (" + std::to_string(w.p) + "," + std::to_string(w.q) +
                          ") truncates the class to a non-cycle; skipped");
    }
    r.filtered.push_back(w);
  }

  if (knots) {
    r.s_based.applicable = true;
    r.s_based.s_minus = *b.s;
    r.s_based.s_plus = *t.s;
    r.s_based.smooth_obstructed = std::abs(*t.s - *b.s) > -E;
  } else {
    r.notices.push_back("s-based check needs knots at both ends; skipped");
  }

  if (ng_wanted) {
    if (tbp) {
      const BigradedHomology h = kh_top.get();
      r.ng.applicable = true;
      r.ng.ng_line = ng_line(h);
      r.ng.verdict = top_obstruction(h, *tbp);
      r.ng.obstructed = r.ng.verdict == TopVerdict::obstructed;
    } else {
      kh_top.wait();
      r.notices.push_back("tb of the top not supplied; filling check skipped");
    }
  }

  std::vector<bool> wflags;
  for (const auto& w : r.filtered) wflags.push_back(w.obstructed);
  r.obstructed = summarize(r.classical.obstructed, r.psi.obstructed, wflags, r.s_based.smooth_obstructed, r.ng.obstructed);
  return r;
}

namespace {

nlohmann::json end_json(const LinkEnd& e) {
  nlohmann::json j;
  j["braid"] = e.braid.is_empty_link() ? std::string("0:") : e.braid.to_string();
  j["tb"] = e.tb ? nlohmann::json(*e.tb) : nlohmann::json(nullptr);
  j["r"] = e.r ? nlohmann::json(*e.r) : nlohmann::json(nullptr);
  j["sl"] = e.braid.is_empty_link() ? 0 : self_linking(e.braid);
  return j;
}

}  // namespace

std::string report_to_json(const ObstructionReport& r) {
  nlohmann::json j;
  j["inputs"] = {{"bottom", end_json(r.bottom)}, {"top", end_json(r.top)}, {"E", r.E}};
  j["classical"] = {{"rot_equal", r.classical.rot_equal},
                    {"tb_difference_matches_E", r.classical.tb_difference_matches_E},
                    {"sl_difference_matches_E", r.classical.sl_difference_matches_E},
                    {"obstructed", r.classical.obstructed}};
  j["psi"] = {{"psi_minus_nonzero", r.psi.psi_minus_nonzero},
              {"psi_plus_zero", r.psi.psi_plus_zero},
              {"obstructed", r.psi.obstructed}};
  j["filtered"] = nlohmann::json::array();
  for (const auto& w : r.filtered) {
    nlohmann::json e = {{"p", w.p},
                        {"q", w.q},
                        {"defining_range", w.info.defining_range},
                        {"vanishing_range", w.info.vanishing_range},
                        {"defined", w.defined},
                        {"obstructed", w.obstructed}};
    if (w.defined) {
      e["minus_nonzero"] = w.minus_nonzero;
      e["plus_zero"] = w.plus_zero;
    }
    j["filtered"].push_back(e);
  }
  if (r.s_based.applicable)
    j["s_based"] = {{"s_minus", r.s_based.s_minus},
                    {"s_plus", r.s_based.s_plus},
                    {"E", r.E},
                    {"smooth_obstructed", r.s_based.smooth_obstructed}};
  else
    j["s_based"] = nullptr;
  if (r.ng.applicable)
    j["ng"] = {{"ng_line", r.ng.ng_line}, {"top_obstruction", to_string(r.ng.verdict)}, {"obstructed", r.ng.obstructed}};
  else
    j["ng"] = nullptr;
  j["notices"] = r.notices;
  j["summary"] = r.obstructed ? "obstructed" : "not obstructed";
  return j.dump(2);
}

std::string report_to_text(const ObstructionReport& r) {
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  auto name = [](const LinkEnd& e) { return e.braid.is_empty_link() ? std::string("empty") : e.braid.to_string(); };
  os << "bottom " << name(r.bottom) << ", top " << name(r.top) << ", E = " << r.E << "\n";
  os << "classical: rot equal " << yn(r.classical.rot_equal) << ", tb difference matches E "
     << yn(r.classical.tb_difference_matches_E) << ", sl difference matches E "
     << yn(r.classical.sl_difference_matches_E) << (r.classical.obstructed ? "  [obstructed]" : "") << "\n";
  os << "psi: bottom nonzero " << yn(r.psi.psi_minus_nonzero) << ", top zero " << yn(r.psi.psi_plus_zero)
     << (r.psi.obstructed ? "  [obstructed]" : "") << "\n";
  for (const auto& w : r.filtered) {
    os << "window (" << w.p << "," << w.q << ")";
    if (w.info.defining_range) os << " defining";
    if (w.info.vanishing_range) os << " vanishing";
    if (!w.defined) {
      os << ": undefined\n";
      continue;
    }
    os << ": bottom nonzero " << yn(w.minus_nonzero) << ", top zero " << yn(w.plus_zero)
       << (w.obstructed ? "  [obstructed]" : "") << "\n";
  }
  if (r.s_based.applicable)
    os << "s: bottom " << r.s_based.s_minus << ", top " << r.s_based.s_plus << ", bound " << -r.E
       << (r.s_based.smooth_obstructed ? "  [obstructed]" : "") << "\n";
  if (r.ng.applicable)
    os << "ng line " << r.ng.ng_line << ": " << to_string(r.ng.verdict) << (r.ng.obstructed ? "  [obstructed]" : "")
       << "\n";
  for (const auto& n : r.notices) os << "note: " << n << "\n";
  os << "summary: " << (r.obstructed ? "obstructed" : "not obstructed") << "\n";
  return os.str();
}

const char* to_string(EffectivenessReport::Verdict v) {
  switch (v) {
    case EffectivenessReport::Verdict::no_stronger: return "no_stronger_than_classical_plus_s";
    case EffectivenessReport::Verdict::potentially_stronger: return "potentially_stronger";
    case EffectivenessReport::Verdict::inconsistent: return "inconsistent";
  }
  return "?";
}

EffectivenessReport effectiveness_classify(const BraidWord& b) {
  validate(b);
  if (b.components() != 1) throw DomainError("effectiveness classification needs a knot");
  const LinkDiagram d = braid_closure(b);
  EffectivenessReport e;
  auto s = std::async(std::launch::async, [&] { return s_invariant(d).s; });
  e.psi_nonzero = !psi_vanishes(d);
  e.s = s.get();
  e.sl = self_linking(b);
  e.s_equals_sl_plus_1 = e.s == e.sl + 1;
  if (e.psi_nonzero == e.s_equals_sl_plus_1) e.verdict = EffectivenessReport::Verdict::no_stronger;
  else if (e.psi_nonzero) e.verdict = EffectivenessReport::Verdict::potentially_stronger;
  else e.verdict = EffectivenessReport::Verdict::inconsistent;
  return e;
}

std::string effectiveness_to_json(const EffectivenessReport& e) {
  nlohmann::json j = {{"psi_nonzero", e.psi_nonzero},
                      {"s_equals_sl_plus_1", e.s_equals_sl_plus_1},
                      {"s", e.s},
                      {"sl", e.sl},
                      {"verdict", to_string(e.verdict)}};
  return j.dump(2);
}

}  // namespace kholag
