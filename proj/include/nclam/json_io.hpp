#pragma once

#include <nlohmann/json.hpp>

#include "nclam/lamination.hpp"
#include "nclam/noncrossing.hpp"
#include "nclam/tree.hpp"

namespace nclam {

inline nlohmann::json to_json(const PlaneTree& tree) { return {{"kids", tree.kids}}; }

inline PlaneTree plane_tree_from_json(const nlohmann::json& j) {
  return PlaneTree{j.at("kids").get<std::vector<Index>>()};
}

inline nlohmann::json to_json(const LukasiewiczPath& path) { return {{"w", path.w}}; }

inline LukasiewiczPath path_from_json(const nlohmann::json& j) {
  return LukasiewiczPath{j.at("w").get<std::vector<Index>>()};
}

inline nlohmann::json to_json(const NoncrossingTree& nc) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [p, q] : nc.edges) edges.push_back({p, q});
  return {{"n", nc.n}, {"edges", edges}};
}

inline NoncrossingTree nc_from_json(const nlohmann::json& j) {
  NoncrossingTree nc;
  nc.n = j.at("n").get<Index>();
  for (const auto& e : j.at("edges")) nc.edges.emplace_back(e.at(0).get<Index>(), e.at(1).get<Index>());
  nc.normalize();
  return nc;
}

inline nlohmann::json to_json(const Lamination& lam) {
  nlohmann::json chords = nlohmann::json::array();
  for (const auto& [p, q] : lam.chords) chords.push_back({p, q});
  return {{"m", lam.m}, {"chords", chords}};
}

inline Lamination lamination_from_json(const nlohmann::json& j) {
  Lamination lam;
  lam.m = j.at("m").get<Index>();
  for (const auto& c : j.at("chords")) lam.add(c.at(0).get<Index>(), c.at(1).get<Index>());
  lam.finish();
  return lam;
}

}  // namespace nclam
