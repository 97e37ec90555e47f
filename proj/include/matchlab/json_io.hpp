#pragma once

#include <nlohmann/json.hpp>

#include "matchlab/adversary.hpp"
#include "matchlab/template_engine.hpp"

namespace matchlab {

inline constexpr const char* kCertSchema = "matchlab-cert-1";

// Words are JSON arrays of colours; e is [].
nlohmann::json word_to_json(const Word& w);
Word word_from_json(const nlohmann::json& j, int k);

// {"k": 3, "nodes": [[], [1], ...]}
nlohmann::json system_to_json(const FiniteColourSystem& v);
FiniteColourSystem system_from_json(const nlohmann::json& j);

// {"radius": 3, "nodes": [...]}
nlohmann::json ball_to_json(const RootedBall& b);
RootedBall ball_from_json(const nlohmann::json& j, int k);

// {"k": 3, "n": 4, "edges": [[0,1,1], ...]}
nlohmann::json graph_to_json(const ColouredGraph& g);
ColouredGraph graph_from_json(const nlohmann::json& j);

// {"outputs": [1, 1, 0, 0]}; 0 encodes unmatched.
nlohmann::json output_to_json(const MatchingOutput& o);
MatchingOutput output_from_json(const nlohmann::json& j);

// Finite-depth template dump: {"k":3,"h":1,"nodes":[{"w":[],"tau":1},...]}.
nlohmann::json template_dump(const Template& t, int depth);

nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace matchlab
