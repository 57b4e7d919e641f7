#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kholag/cobordism.hpp"
#include "kholag/error.hpp"

namespace kholag {

Move Move::band(std::size_t position, int generator, int sign) {
  Move m{sign > 0 ? Type::band_positive : Type::saddle};
  m.position = position;
  m.generator = generator;
  m.sign = sign > 0 ? 1 : -1;
  return m;
}

Move Move::conjugate(int rotation) {
  Move m{Type::braid_conjugate};
  m.rotation = rotation;
  return m;
}

Move Move::r1(int sign, bool remove) {
  Move m{Type::reidemeister};
  m.kind = Reidemeister::r1;
  m.sign = sign > 0 ? 1 : -1;
  m.inverse = remove;
  return m;
}

Move Move::r2(std::size_t position, int generator, bool remove) {
  Move m{Type::reidemeister};
  m.kind = Reidemeister::r2;
  m.position = position;
  m.generator = generator;
  m.inverse = remove;
  return m;
}

Move Move::r3(std::size_t position, int generator, bool inverse) {
  Move m{Type::reidemeister};
  m.kind = Reidemeister::r3;
  m.position = position;
  m.generator = generator;
  m.inverse = inverse;
  return m;
}

int Move::euler() const {
  switch (type) {
    case Type::birth:
    case Type::death: return 1;
    case Type::saddle:
    case Type::band_positive: return -1;
    default: return 0;
  }
}

bool Move::ascending_positive() const {
  switch (type) {
    case Type::death: return false;
    case Type::saddle: return sign > 0;
    case Type::reidemeister: return kind != Reidemeister::r1 || sign > 0;
    default: return true;
  }
}

std::string Move::describe() const {
  std::ostringstream os;
  switch (type) {
    case Type::birth: os << "birth"; break;
    case Type::death: os << "death"; break;
    case Type::saddle:
    case Type::band_positive:
      os << (sign > 0 ? "band_positive" : "saddle") << "(position " << position << ", generator "
         << sign * generator << ")";
      break;
    case Type::braid_conjugate: os << "braid_conjugate(" << rotation << ")"; break;
    case Type::markov_stabilize_positive: os << "markov_stabilize_positive"; break;
    case Type::markov_destabilize_positive: os << "markov_destabilize_positive"; break;
    case Type::reidemeister:
      os << "reidemeister R" << (kind == Reidemeister::r1 ? 1 : kind == Reidemeister::r2 ? 2 : 3);
      if (kind == Reidemeister::r1) os << "(sign " << sign << ")";
      else os << "(position " << position << ", generator " << generator << ")";
      if (inverse) os << " inverse";
      break;
  }
  return os.str();
}

namespace {

bool uses_strand(const BraidWord& b, int strand) {
  return std::any_of(b.letters.begin(), b.letters.end(), [&](int l) {
    const int g = std::abs(l);
    return g == strand || g == strand + 1;
  });
}

void require_nonempty(const BraidWord& b, const Move& m) {
  if (b.is_empty_link()) throw DomainError(m.describe() + " needs a nonempty frame");
}

void require_generator(const BraidWord& b, int g, const Move& m) {
  if (g < 1 || g >= b.strands) throw DomainError(m.describe() + ": generator out of range");
}

BraidWord destabilized(const BraidWord& b, int sign, const Move& m) {
  const int n = b.strands;
  if (n < 2 || b.letters.empty() || b.letters.back() != sign * (n - 1))
    throw DomainError(m.describe() + ": frame does not end with the stabilizing letter");
  BraidWord out{n - 1, {b.letters.begin(), b.letters.end() - 1}};
  if (uses_strand(out, n - 1)) throw DomainError(m.describe() + ": last strand is not free");
  return out;
}

BraidWord stabilized(const BraidWord& b, int sign) {
  BraidWord out = b.stabilized_positive();
  out.letters.back() *= sign;
  return out;
}

}  // namespace

BraidWord apply_move(const Move& m, const BraidWord& below) {
  switch (m.type) {
    case Move::Type::birth:
      return BraidWord{below.strands + 1, below.letters};
    case Move::Type::death: {
      require_nonempty(below, m);
      const int n = below.strands;
      if (std::any_of(below.letters.begin(), below.letters.end(), [&](int l) { return std::abs(l) == n - 1; }))
        throw DomainError("death: rightmost strand is not a free circle");
      if (n == 1) return BraidWord::empty_link();
      return BraidWord{n - 1, below.letters};
    }
    case Move::Type::saddle:
    case Move::Type::band_positive:
      require_nonempty(below, m);
      require_generator(below, m.generator, m);
      if (m.position > below.letters.size()) throw DomainError(m.describe() + ": position out of range");
      return below.with_letter_inserted(m.position, m.sign * m.generator);
    case Move::Type::braid_conjugate:
      require_nonempty(below, m);
      return below.rotated(m.rotation);
    case Move::Type::markov_stabilize_positive:
      require_nonempty(below, m);
      return stabilized(below, 1);
    case Move::Type::markov_destabilize_positive:
      require_nonempty(below, m);
      return destabilized(below, 1, m);
    case Move::Type::reidemeister:
      require_nonempty(below, m);
      switch (m.kind) {
        case Move::Reidemeister::r1:
          return m.inverse ? destabilized(below, m.sign, m) : stabilized(below, m.sign);
        case Move::Reidemeister::r2: {
          require_generator(below, m.generator, m);
          const int s = m.sign * m.generator;
          if (!m.inverse) {
            if (m.position > below.letters.size()) throw DomainError(m.describe() + ": position out of range");
            return below.with_letter_inserted(m.position, -s).with_letter_inserted(m.position, s);
          }
          if (m.position + 1 >= below.letters.size() + 0 || below.letters[m.position] != s ||
              below.letters[m.position + 1] != -s)
            throw DomainError(m.describe() + ": no cancelling pair at this position");
          return below.with_letter_erased(m.position).with_letter_erased(m.position);
        }
        case Move::Reidemeister::r3: {
          const int g = m.generator;
          if (g < 1 || g + 1 >= below.strands) throw DomainError(m.describe() + ": generator out of range");
          const std::vector<int> lhs{g, g + 1, g}, rhs{g + 1, g, g + 1};
          const auto& from = m.inverse ? rhs : lhs;
          const auto& to = m.inverse ? lhs : rhs;
          if (m.position + 3 > below.letters.size() ||
              !std::equal(from.begin(), from.end(), below.letters.begin() + static_cast<long>(m.position)))
            throw DomainError(m.describe() + ": braid relation does not match at this position");
          BraidWord out = below;
          std::copy(to.begin(), to.end(), out.letters.begin() + static_cast<long>(m.position));
          return out;
        }
      }
  }
  throw DomainError("unknown move");
}

int Movie::euler_characteristic() const {
  int chi = 0;
  for (const auto& m : moves) chi += m.euler();
  return chi;
}

bool Movie::ascending_positive() const {
  return std::all_of(moves.begin(), moves.end(), [](const Move& m) { return m.ascending_positive(); });
}

void Movie::validate() const {
  if (frames.empty()) throw ParseError("movie has no frames");
  if (frames.size() != moves.size() + 1)
    throw ParseError("movie has " + std::to_string(frames.size()) + " frames but " + std::to_string(moves.size()) +
                     " moves");
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (frames[t].is_empty_link()) continue;
    try {
      kholag::validate(frames[t]);
    } catch (const Error& e) {
      throw ParseError("frame " + std::to_string(t) + ": " + e.what());
    }
  }
  for (std::size_t t = 0; t < moves.size(); ++t) {
    BraidWord next;
    try {
      next = apply_move(moves[t], frames[t]);
    } catch (const Error& e) {
      throw ParseError("frame " + std::to_string(t) + ": " + e.what());
    }
    if (next != frames[t + 1])
      throw ParseError("frame " + std::to_string(t + 1) + ": expected \"" + next.to_string() + "\" after " +
                       moves[t].describe() + ", found \"" + frames[t + 1].to_string() + "\"");
  }
}

Movie Movie::from_moves(BraidWord bottom, std::vector<Move> moves) {
  Movie mv;
  mv.frames.push_back(std::move(bottom));
  for (std::size_t t = 0; t < moves.size(); ++t) {
    try {
      mv.frames.push_back(apply_move(moves[t], mv.frames.back()));
    } catch (const Error& e) {
      throw ParseError("frame " + std::to_string(t) + ": " + e.what());
    }
  }
  mv.moves = std::move(moves);
  return mv;
}

Movie legendrian_to_transverse_movie(const std::vector<LegendrianMove>& legs) {
  std::vector<Move> moves;
  BraidWord cur = BraidWord::empty_link();
  auto push = [&](Move m) {
    cur = apply_move(m, cur);
    moves.push_back(m);
  };
  for (const auto& lm : legs) {
    switch (lm.type) {
      case LegendrianMove::Type::leg_birth:
        push(Move::birth());
        break;
      case LegendrianMove::Type::leg_pinch: {
        if (cur.is_empty_link()) throw DomainError("leg_pinch on the empty link");
        if (lm.generator < 1) throw DomainError("leg_pinch: generator must be positive");
        while (lm.generator >= cur.strands) push(Move::stabilize());
        const std::size_t pos = lm.position.value_or(cur.letters.size());
        push(Move::band(pos, lm.generator, 1));
        break;
      }
      case LegendrianMove::Type::leg_isotopy:
        for (const auto& m : lm.isotopy) {
          if (m.euler() != 0 || !m.ascending_positive())
            throw DomainError("leg_isotopy may only contain transverse isotopies, got " + m.describe());
          push(m);
        }
        break;
    }
  }
  Movie mv = Movie::from_moves(BraidWord::empty_link(), std::move(moves));
  return mv;
}

// ---------------------------------------------------------------- JSON

namespace {

using nlohmann::json;

int get_int(const json& params, const char* key, int fallback) {
  if (!params.contains(key)) return fallback;
  if (!params[key].is_number_integer()) throw ParseError(std::string("parameter '") + key + "' must be an integer");
  return params[key].get<int>();
}

std::size_t get_index(const json& params, const char* key, std::size_t fallback) {
  const int v = get_int(params, key, static_cast<int>(fallback));
  if (v < 0) throw ParseError(std::string("parameter '") + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

// Position defaults to the end of the word below.
Move move_from_json(const json& j, const BraidWord* below) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ParseError("move must be an object with a string 'type'");
  const std::string type = j["type"];
  const json params = j.value("params", json::object());
  if (!params.is_object()) throw ParseError("move params must be an object");
  const std::size_t end = below && !below->is_empty_link() ? below->letters.size() : 0;

  if (type == "birth") return Move::birth();
  if (type == "death") return Move::death();
  if (type == "band_positive") return Move::band(get_index(params, "position", end), get_int(params, "generator", 1), 1);
  if (type == "saddle")
    return Move::band(get_index(params, "position", end), get_int(params, "generator", 1), get_int(params, "sign", -1));
  if (type == "braid_conjugate") return Move::conjugate(get_int(params, "rotation", 1));
  if (type == "markov_stabilize_positive") return Move::stabilize();
  if (type == "markov_destabilize_positive") return Move::destabilize();
  if (type == "reidemeister") {
    const std::string kind = params.value("kind", std::string{});
    const bool inverse = params.value("inverse", false);
    Move m;
    if (kind == "R1") m = Move::r1(get_int(params, "sign", 1), inverse);
    else if (kind == "R2") m = Move::r2(get_index(params, "position", end), get_int(params, "generator", 1), inverse);
    else if (kind == "R3") m = Move::r3(get_index(params, "position", 0), get_int(params, "generator", 1), inverse);
    else throw ParseError("reidemeister kind must be R1, R2 or R3");
    if (kind == "R2") m.sign = get_int(params, "sign", 1) > 0 ? 1 : -1;
    return m;
  }
  throw ParseError("unrecognized move type '" + type + "'");
}

json move_to_json(const Move& m) {
  json j;
  json p = json::object();
  switch (m.type) {
    case Move::Type::birth: j["type"] = "birth"; break;
    case Move::Type::death: j["type"] = "death"; break;
    case Move::Type::band_positive:
      j["type"] = "band_positive";
      p["position"] = m.position;
      p["generator"] = m.generator;
      break;
    case Move::Type::saddle:
      j["type"] = "saddle";
      p["position"] = m.position;
      p["generator"] = m.generator;
      p["sign"] = m.sign;
      break;
    case Move::Type::braid_conjugate:
      j["type"] = "braid_conjugate";
      p["rotation"] = m.rotation;
      break;
    case Move::Type::markov_stabilize_positive: j["type"] = "markov_stabilize_positive"; break;
    case Move::Type::markov_destabilize_positive: j["type"] = "markov_destabilize_positive"; break;
    case Move::Type::reidemeister:
      j["type"] = "reidemeister";
      p["kind"] = m.kind == Move::Reidemeister::r1 ? "R1" : m.kind == Move::Reidemeister::r2 ? "R2" : "R3";
      if (m.kind == Move::Reidemeister::r1 || m.kind == Move::Reidemeister::r2) p["sign"] = m.sign;
      if (m.kind != Move::Reidemeister::r1) {
        p["position"] = m.position;
        p["generator"] = m.generator;
      }
      p["inverse"] = m.inverse;
      break;
  }
  j["params"] = p;
  return j;
}

LegendrianMove legendrian_from_json(const json& j, std::size_t index) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ParseError("legendrian move " + std::to_string(index) + " must be an object with a string 'type'");
  const std::string type = j["type"];
  const json params = j.value("params", json::object());
  LegendrianMove lm;
  if (type == "leg_birth") {
    lm.type = LegendrianMove::Type::leg_birth;
  } else if (type == "leg_pinch") {
    lm.type = LegendrianMove::Type::leg_pinch;
    if (params.contains("position")) lm.position = get_index(params, "position", 0);
    lm.generator = get_int(params, "generator", 1);
  } else if (type == "leg_isotopy") {
    lm.type = LegendrianMove::Type::leg_isotopy;
    for (const auto& m : params.value("moves", json::array())) lm.isotopy.push_back(move_from_json(m, nullptr));
  } else {
    throw ParseError("unrecognized Legendrian move '" + type + "'");
  }
  return lm;
}

}  // namespace

Movie parse_movie_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("movie JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("movie JSON must be an object");
  if (j.contains("legendrian")) {
    std::vector<LegendrianMove> legs;
    std::size_t i = 0;
    for (const auto& m : j["legendrian"]) legs.push_back(legendrian_from_json(m, i++));
    try {
      return legendrian_to_transverse_movie(legs);
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
  }
  if (!j.contains("frames") || !j["frames"].is_array() || j["frames"].empty())
    throw ParseError("movie JSON needs a nonempty 'frames' array");
  const json moves = j.value("moves", json::array());
  if (!moves.is_array()) throw ParseError("'moves' must be an array");

  Movie mv;
  for (std::size_t t = 0; t < j["frames"].size(); ++t) {
    const auto& f = j["frames"][t];
    if (!f.is_string()) throw ParseError("frame " + std::to_string(t) + ": expected a braid string");
    try {
      mv.frames.push_back(parse_frame(f.get<std::string>()));
    } catch (const Error& e) {
      throw ParseError("frame " + std::to_string(t) + ": " + e.what());
    }
  }
  const bool derive = mv.frames.size() == 1;
  for (std::size_t t = 0; t < moves.size(); ++t) {
    const BraidWord* below = t < mv.frames.size() ? &mv.frames[t] : nullptr;
    try {
      mv.moves.push_back(move_from_json(moves[t], below));
      if (derive) mv.frames.push_back(apply_move(mv.moves.back(), mv.frames.back()));
    } catch (const Error& e) {
      throw ParseError("frame " + std::to_string(t) + ": " + e.what());
    }
  }
  mv.validate();
  return mv;
}

std::string movie_to_json(const Movie& movie) {
  json j;
  j["frames"] = json::array();
  for (const auto& f : movie.frames) j["frames"].push_back(f.is_empty_link() ? std::string("0:") : f.to_string());
  j["moves"] = json::array();
  for (const auto& m : movie.moves) j["moves"].push_back(move_to_json(m));
  return j.dump();
}

}  // namespace kholag
