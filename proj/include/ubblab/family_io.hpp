#pragma once

// State-family file format: one JSON document holding labeled kets with their
// roles. Terms are emitted in lexicographic index order so files built from
// the same (d, version) are identical across platforms; amplitudes are plain
// doubles and round-trip exactly.

#include <fstream>
#include <string>

#include <json.hpp>

#include "ubblab/core.hpp"
#include "ubblab/families.hpp"

namespace ubblab {

inline constexpr int kFamilyFormatVersion = 1;

inline nlohmann::json family_to_json(const StateFamily& fam) {
  nlohmann::json j;
  j["format_version"] = kFamilyFormatVersion;
  j["d"] = fam.d;
  j["states"] = nlohmann::json::array();
  for (const Member& m : fam.members) {
    nlohmann::json s;
    s["label"] = m.label;
    s["role"] = role_name(m.role);
    s["layer"] = m.layer;
    s["subset"] = m.subset;
    s["terms"] = nlohmann::json::array();
    for (const auto& [key, amp] : m.ket.terms()) {
      auto idx = m.ket.decode(key);
      s["terms"].push_back({{"idx", {idx[0], idx[1], idx[2], idx[3]}},
                            {"re", amp.real()},
                            {"im", amp.imag()}});
    }
    j["states"].push_back(std::move(s));
  }
  return j;
}

inline StateFamily family_from_json(const nlohmann::json& j) {
  if (j.at("format_version").get<int>() != kFamilyFormatVersion)
    throw std::runtime_error("unsupported state-family format version");
  StateFamily fam;
  fam.d = j.at("d").get<int>();
  for (const auto& s : j.at("states")) {
    auto role = role_from_name(s.at("role").get<std::string>());
    if (!role) throw std::runtime_error("unknown role: " + s.at("role").get<std::string>());
    Member m{s.at("label").get<std::string>(), *role, s.at("layer").get<int>(),
             s.at("subset").get<std::string>(), Ket(fam.d)};
    for (const auto& t : s.at("terms")) {
      const auto& idx = t.at("idx");
      m.ket.add_term(idx.at(0).get<int>(), idx.at(1).get<int>(),
                     idx.at(2).get<int>(), idx.at(3).get<int>(),
                     cplx(t.at("re").get<double>(), t.at("im").get<double>()));
    }
    fam.members.push_back(std::move(m));
  }
  return fam;
}

inline void write_family(const StateFamily& fam, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << family_to_json(fam).dump(1) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline StateFamily read_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  return family_from_json(j);
}

}  // namespace ubblab
