#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kholag/braid.hpp"
#include "kholag/khovanov.hpp"
#include "kholag/lee.hpp"

namespace kholag {

// One end of a proposed cobordism: the transverse pushoff as a braid plus the
// Legendrian's classical invariants when known.
struct LinkEnd {
  BraidWord braid = BraidWord::empty_link();
  std::optional<int> tb;
  std::optional<int> r;
};

struct ObstructionReport {
  LinkEnd bottom, top;
  int E = 0;

  struct Classical {
    bool rot_equal = true;
    bool tb_difference_matches_E = true;
    bool sl_difference_matches_E = true;
    bool obstructed = false;
  } classical;

  struct Psi {
    bool psi_minus_nonzero = false;
    bool psi_plus_zero = false;
    bool obstructed = false;
  } psi;

  struct Window {
    int p = 0, q = 1;
    WindowInfo info;
    bool defined = true;  // false when the truncated class is not a cycle
    bool minus_nonzero = false;
    bool plus_zero = false;
    bool obstructed = false;
  };
  std::vector<Window> filtered;

  struct SBased {
    bool applicable = false;
    int s_minus = 0, s_plus = 0;
    bool smooth_obstructed = false;
  } s_based;

  struct Ng {
    bool applicable = false;
    int ng_line = 0;
    TopVerdict verdict = TopVerdict::consistent;
    bool obstructed = false;
  } ng;

  std::vector<std::string> notices;
  bool obstructed = false;
};

inline const std::vector<std::pair<int, int>> kDefaultWindows{{0, 1}, {-1, 1}, {0, 2}};

// Runs every applicable obstruction. `windows` is appended to the default
// list. Throws DomainError when E has the wrong parity for the component
// counts.
ObstructionReport obstruction_report(const LinkEnd& bottom, const LinkEnd& top, int E,
                                     const std::vector<std::pair<int, int>>& windows = {});

// Summary verdict from the component flags.
bool summarize(bool classical, bool psi, const std::vector<bool>& windows, bool s_based, bool ng);

std::string report_to_json(const ObstructionReport& r);
std::string report_to_text(const ObstructionReport& r);

struct EffectivenessReport {
  enum class Verdict { no_stronger, potentially_stronger, inconsistent };
  bool psi_nonzero = false;
  bool s_equals_sl_plus_1 = false;
  int s = 0;
  int sl = 0;
  Verdict verdict = Verdict::no_stronger;
};

const char* to_string(EffectivenessReport::Verdict v);

// Whether the psi obstruction can say more than the classical invariants plus
// s for this knot. DomainError for links.
EffectivenessReport effectiveness_classify(const BraidWord& b);
std::string effectiveness_to_json(const EffectivenessReport& e);

}  // namespace kholag
