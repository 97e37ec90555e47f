#include "matchlab/json_io.hpp"

#include <fstream>

namespace matchlab {

using nlohmann::json;

json word_to_json(const Word& w) {
  json a = json::array();
  for (int i = 0; i < w.norm(); ++i) a.push_back(w.letter(i));
  return a;
}

Word word_from_json(const json& j, int k) {
  if (!j.is_array()) throw Error(Errc::format_error, "word must be an array");
  std::vector<int> letters;
  for (const auto& x : j) letters.push_back(x.get<int>());
  Word w(letters, k);
  if (w.norm() != static_cast<int>(letters.size()))
    throw Error(Errc::format_error, "word is not reduced");
  return w;
}

json system_to_json(const FiniteColourSystem& v) {
  json nodes = json::array();
  for (const Word& w : v.nodes()) nodes.push_back(word_to_json(w));
  return json{{"k", v.k()}, {"nodes", nodes}};
}

FiniteColourSystem system_from_json(const json& j) {
  int k = j.at("k").get<int>();
  std::vector<Word> nodes;
  for (const auto& x : j.at("nodes")) nodes.push_back(word_from_json(x, k));
  return FiniteColourSystem(k, std::move(nodes));
}

json ball_to_json(const RootedBall& b) {
  json nodes = json::array();
  for (const Word& w : b.system.nodes()) nodes.push_back(word_to_json(w));
  return json{{"radius", b.radius}, {"nodes", nodes}};
}

RootedBall ball_from_json(const json& j, int k) {
  int radius = j.at("radius").get<int>();
  std::vector<Word> nodes;
  for (const auto& x : j.at("nodes")) nodes.push_back(word_from_json(x, k));
  FiniteColourSystem sys(k, std::move(nodes));
  if (sys.depth() > radius)
    throw Error(Errc::format_error, "ball node deeper than its radius");
  return RootedBall{std::move(sys), radius};
}

json graph_to_json(const ColouredGraph& g) {
  json es = json::array();
  for (const auto& e : g.edge_list()) es.push_back({e[0], e[1], e[2]});
  return json{{"k", g.k()}, {"n", g.n()}, {"edges", es}};
}

ColouredGraph graph_from_json(const json& j) {
  int k = j.at("k").get<int>();
  int n = j.at("n").get<int>();
  std::vector<std::array<int, 3>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw Error(Errc::format_error, "edge must be [u, v, colour]");
    edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
  }
  return ColouredGraph(k, n, std::move(edges));
}

json output_to_json(const MatchingOutput& o) {
  return json{{"outputs", o.outputs}};
}

MatchingOutput output_from_json(const json& j) {
  MatchingOutput o;
  o.outputs = j.at("outputs").get<std::vector<int>>();
  return o;
}

json template_dump(const Template& t, int depth) {
  json nodes = json::array();
  for (const Word& w : restrict_depth(*t.system(), depth).nodes())
    nodes.push_back(json{{"w", word_to_json(w)}, {"tau", t.forbidden(w)}});
  return json{{"k", t.k()}, {"h", t.h()}, {"nodes", nodes}};
}

namespace {

json base_trace_to_json(const BaseTrace& b) {
  return json{{"h", b.h_of}, {"c1", b.c1}, {"c2", b.c2},
              {"c3", b.c3},  {"c4", b.c4}, {"branch", b.branch}};
}

BaseTrace base_trace_from_json(const json& j) {
  BaseTrace b;
  b.h_of = j.at("h").get<std::vector<int>>();
  b.c1 = j.at("c1").get<int>();
  b.c2 = j.at("c2").get<int>();
  b.c3 = j.at("c3").get<int>();
  b.c4 = j.at("c4").get<int>();
  b.branch = j.at("branch").get<std::string>();
  return b;
}

}  // namespace

json certificate_to_json(const Certificate& c) {
  json j{{"schema", kCertSchema},
         {"kind", c.kind},
         {"k", c.k},
         {"d", c.d},
         {"alg", json{{"name", c.alg_name}, {"k", c.alg_k}, {"r", c.alg_r}}},
         {"trace", json{{"base", base_trace_to_json(c.base)},
                        {"steps", json::array()}}}};
  for (const StepTrace& s : c.steps)
    j["trace"]["steps"].push_back(json{{"h", s.h},
                                       {"chi", s.chi},
                                       {"y", word_to_json(s.y)},
                                       {"side", s.side}});
  if (c.kind == "tightness") {
    j["U_d"] = system_to_json(c.u_depth)["nodes"];
    j["V_d"] = system_to_json(c.v_depth)["nodes"];
    j["root_balls"] =
        json{{"U", ball_to_json(c.ball_u)}, {"V", ball_to_json(c.ball_v)}};
    j["outputs"] = json{{"U", c.out_u}, {"V", c.out_v}};
  } else {
    const ViolationWitness& w = c.violation.value();
    j["origin"] = w.origin;
    j["instance"] = system_to_json(w.instance);
    j["node_outputs"] = w.outputs.outputs;
    j["violation"] = json{{"condition", w.report.condition},
                          {"node", w.report.node},
                          {"colour", w.report.colour},
                          {"neighbour", w.report.neighbour},
                          {"message", w.report.message}};
  }
  return j;
}

Certificate certificate_from_json(const json& j) {
  if (j.value("schema", "") != kCertSchema)
    throw Error(Errc::format_error, "unknown certificate schema");
  Certificate c;
  c.kind = j.at("kind").get<std::string>();
  c.k = j.at("k").get<int>();
  c.d = j.at("d").get<int>();
  c.alg_name = j.at("alg").at("name").get<std::string>();
  c.alg_k = j.at("alg").at("k").get<int>();
  c.alg_r = j.at("alg").at("r").get<int>();
  if (j.contains("trace")) {
    if (j["trace"].contains("base"))
      c.base = base_trace_from_json(j["trace"]["base"]);
    for (const auto& s : j["trace"].value("steps", json::array()))
      c.steps.push_back(StepTrace{s.at("h").get<int>(),
                                  s.at("chi").get<int>(),
                                  word_from_json(s.at("y"), c.k),
                                  s.at("side").get<std::string>()});
  }
  if (c.kind == "tightness") {
    auto words = [&](const json& arr) {
      std::vector<Word> out;
      for (const auto& x : arr) out.push_back(word_from_json(x, c.k));
      return out;
    };
    c.u_depth = FiniteColourSystem(c.k, words(j.at("U_d")));
    c.v_depth = FiniteColourSystem(c.k, words(j.at("V_d")));
    c.ball_u = ball_from_json(j.at("root_balls").at("U"), c.k);
    c.ball_v = ball_from_json(j.at("root_balls").at("V"), c.k);
    c.out_u = j.at("outputs").at("U").get<int>();
    c.out_v = j.at("outputs").at("V").get<int>();
  } else if (c.kind == "violation") {
    ViolationWitness w;
    w.origin = j.value("origin", "");
    w.instance = system_from_json(j.at("instance"));
    w.outputs.outputs = j.at("node_outputs").get<std::vector<int>>();
    const json& v = j.at("violation");
    w.report.pass = false;
    w.report.condition = v.at("condition").get<int>();
    w.report.node = v.at("node").get<int>();
    w.report.colour = v.at("colour").get<int>();
    w.report.neighbour = v.at("neighbour").get<int>();
    w.report.message = v.value("message", "");
    c.violation = std::move(w);
  } else {
    throw Error(Errc::format_error, "unknown certificate kind " + c.kind);
  }
  return c;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::format_error, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::format_error, "bad JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::format_error, "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace matchlab
