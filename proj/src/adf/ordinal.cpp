#include "qf/adf/ordinal.hpp"

#include <regex>
#include <stdexcept>

namespace qf::adf {

Ordinal Ordinal::pred() const {
  if (!is_successor()) throw std::logic_error("pred() of a non-successor ordinal");
  return {c2, c1, c0 - 1};
}

Ordinal Ordinal::fundamental(Nat n) const {
  if (!is_limit()) throw std::logic_error("fundamental sequence of a non-limit ordinal");
  if (n == 0) return {};
  if (c1 > 0) return {c2, c1 - 1, n};
  return {c2 - 1, n, 0};
}

std::string Ordinal::str() const {
  std::string out;
  auto term = [&](Nat c, const std::string& base) {
    if (c == 0) return;
    if (!out.empty()) out += "+";
    out += base.empty() ? std::to_string(c) : (c == 1 ? base : base + "*" + std::to_string(c));
  };
  term(c2, "w^2");
  term(c1, "w");
  term(c0, "");
  return out.empty() ? "0" : out;
}

Ordinal parse_ordinal(const std::string& raw) {
  std::string s;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw.compare(i, 2, "ω") == 0) {
      s += 'w';
      ++i;
    } else if (raw.compare(i, 2, "·") == 0) {
      s += '*';
      ++i;
    } else if (raw[i] != ' ') {
      s += raw[i];
    }
  }
  static const std::regex term(R"((w\^2|w)(\*(\d+))?|(\d+))");
  Ordinal out;
  std::size_t pos = 0;
  int last_rank = 3;
  while (pos <= s.size()) {
    std::size_t end = s.find('+', pos);
    if (end == std::string::npos) end = s.size();
    std::smatch m;
    std::string t = s.substr(pos, end - pos);
    if (!std::regex_match(t, m, term)) throw ParseError("bad ordinal: " + raw);
    int rank;
    Nat c;
    if (m[4].matched) {
      rank = 0;
      c = std::stoll(m[4].str());
    } else {
      rank = m[1].str() == "w" ? 1 : 2;
      c = m[3].matched ? std::stoll(m[3].str()) : 1;
    }
    if (rank >= last_rank) throw ParseError("ordinal terms must be in decreasing order: " + raw);
    last_rank = rank;
    (rank == 2 ? out.c2 : rank == 1 ? out.c1 : out.c0) = c;
    pos = end + 1;
  }
  return out;
}

Json ordinal_json(const Ordinal& o) { return Json::array({o.c2, o.c1, o.c0}); }

Ordinal ordinal_from(const Json& j) {
  if (j.is_string()) return parse_ordinal(j.get<std::string>());
  if (j.is_number_integer()) return Ordinal::finite(j.get<Nat>());
  if (!j.is_array() || j.size() != 3) throw ParseError("ordinal must be [c2, c1, c0]");
  Ordinal o{j[0].get<Nat>(), j[1].get<Nat>(), j[2].get<Nat>()};
  if (o.c2 < 0 || o.c1 < 0 || o.c0 < 0) throw ParseError("negative ordinal coefficient");
  return o;
}

Json position_json(const Position& p) { return Json{{"fiber", ordinal_json(p.fiber)}, {"j", p.j}}; }

}  // namespace qf::adf
