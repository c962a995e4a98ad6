#include "mdep/report.hpp"

#include <sstream>

namespace mdep::report {

json integer(u64 v) {
  if (v > kJsonSafeInteger) return std::to_string(v);
  return v;
}

json integer(i64 v) {
  const u64 mag = v < 0 ? u64{0} - static_cast<u64>(v) : static_cast<u64>(v);
  if (mag > kJsonSafeInteger) return std::to_string(v);
  return v;
}

json to_json(const PrimitiveSolution& s) {
  return {{"g", integer(s.g)},
          {"x", s.x},
          {"y", s.y},
          {"sign", std::string(to_string(s.sign))}};
}

json to_json(const MSetResult& r, bool negative_d, bool with_pairs) {
  json j;
  j["d"] = negative_d ? integer(-static_cast<i64>(r.d)) : integer(r.d);
  j["m_value"] = r.m_value;
  j["n_plus"] = r.n_plus;
  j["n_minus"] = r.n_minus;
  j["delta"] = r.delta;
  j["plus_solutions"] = json::array();
  for (const auto& s : r.plus_solutions) j["plus_solutions"].push_back(to_json(s));
  j["minus_solutions"] = json::array();
  for (const auto& s : r.minus_solutions) j["minus_solutions"].push_back(to_json(s));
  if (with_pairs) {
    j["pairs"] = json::array();
    for (const auto& p : r.pairs) {
      if (negative_d) {
        j["pairs"].push_back({integer(p.b), integer(p.a)});
      } else {
        j["pairs"].push_back({integer(p.a), integer(p.b)});
      }
    }
  }
  return j;
}

json to_json(const ScanReport& r, bool include_timing) {
  json j;
  j["range"] = {{"lo", integer(r.lo)}, {"hi", integer(r.hi)}};
  j["include_odd"] = r.include_odd;
  j["histogram"] = json::array();
  for (const auto& [m, c] : r.histogram) {
    j["histogram"].push_back({{"m_value", m}, {"count", integer(c)}});
  }
  j["exceptional"] = json::array();
  for (const auto& rec : r.exceptional) {
    json sols = json::array();
    for (const auto& s : rec.solutions) sols.push_back(to_json(s));
    j["exceptional"].push_back({{"d", integer(rec.d)},
                                {"kind", std::string(to_string(rec.kind))},
                                {"m_value", rec.m_value},
                                {"solutions", sols}});
  }
  json bound = json::array(), conj = json::array();
  for (u64 d : r.audit.bound_violations) bound.push_back(integer(d));
  for (u64 d : r.audit.conjecture_violations) conj.push_back(integer(d));
  j["audit"] = {{"bound_violations", bound},
                {"conjecture_violations", conj},
                {"unexpected_m_values", r.unexpected_m_values()}};
  j["numbers_scanned"] = integer(r.numbers_scanned);
  j["segments"] = {{"done", r.segments_done}, {"total", r.segments_total}};
  j["complete"] = r.complete;
  if (include_timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

std::string histogram_csv(const ScanReport& r) {
  std::ostringstream out;
  out << "m_value,count\n";
  for (const auto& [m, c] : r.histogram) out << m << ',' << c << '\n';
  return out.str();
}

std::string exceptional_csv(const ScanReport& r) {
  std::ostringstream out;
  out << "d,kind,g,x,y,sign\n";
  for (const auto& rec : r.exceptional) {
    for (const auto& s : rec.solutions) {
      out << rec.d << ',' << to_string(rec.kind) << ',' << s.g << ',' << s.x
          << ',' << s.y << ',' << to_string(s.sign) << '\n';
    }
  }
  return out.str();
}

}  // namespace mdep::report
