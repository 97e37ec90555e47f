#include "matchlab/dot_export.hpp"

#include <sstream>

namespace matchlab {

namespace {

const char* kPalette[] = {"black",     "firebrick", "royalblue", "seagreen",
                          "darkorange", "purple",    "saddlebrown"};

const char* edge_colour(int c) {
  return kPalette[c % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

void system_body(std::ostream& os, const FiniteColourSystem& v,
                 const std::string& prefix) {
  for (size_t i = 0; i < v.size(); ++i) {
    const Word& w = v.nodes()[i];
    os << "  " << prefix << i << " [label=\"" << w.str() << "\"";
    if (w.empty()) os << ", peripheries=2";
    os << "];\n";
  }
  for (const SystemEdge& e : edges(v))
    os << "  " << prefix << v.index_of(e.from) << " -- " << prefix
       << v.index_of(e.to) << " [label=\"" << e.colour << "\", color=\""
       << edge_colour(e.colour) << "\"];\n";
}

}  // namespace

std::string to_dot(const FiniteColourSystem& v, const std::string& name) {
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n  node [shape=circle];\n";
  system_body(os, v, "n");
  os << "}\n";
  return os.str();
}

std::string to_dot(const ColouredGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n  node [shape=circle];\n";
  for (int v = 0; v < g.n(); ++v) os << "  n" << v << ";\n";
  for (const auto& e : g.edge_list())
    os << "  n" << e[0] << " -- n" << e[1] << " [label=\"" << e[2]
       << "\", color=\"" << edge_colour(e[2]) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string certificate_to_dot(const Certificate& c) {
  std::ostringstream os;
  os << "graph certificate {\n  node [shape=circle];\n";
  auto cluster = [&os](const FiniteColourSystem& sys, const std::string& id,
                       const std::string& label) {
    os << "  subgraph cluster_" << id << " {\n    label=\"" << label
       << "\";\n";
    std::ostringstream body;
    system_body(body, sys, id + "_");
    std::istringstream in(body.str());
    std::string line;
    while (std::getline(in, line)) os << "  " << line << "\n";
    os << "  }\n";
  };
  if (c.kind == "tightness") {
    cluster(c.u_depth, "U", "U[" + std::to_string(c.d) + "]");
    cluster(c.v_depth, "V", "V[" + std::to_string(c.d) + "]");
    cluster(c.ball_u.system, "BU",
            "ball of U, radius " + std::to_string(c.ball_u.radius));
    cluster(c.ball_v.system, "BV",
            "ball of V, radius " + std::to_string(c.ball_v.radius));
  } else if (c.violation) {
    cluster(c.violation->instance, "W", "violation instance");
  }
  os << "}\n";
  return os.str();
}

}  // namespace matchlab
