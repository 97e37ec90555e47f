#pragma once

#include <string>

#include "matchlab/adversary.hpp"
#include "matchlab/local_model.hpp"

namespace matchlab {

// Graphviz export. Systems render one node per word (root doubly circled,
// labels are word strings); edges are labelled and coloured by their colour
// index.
std::string to_dot(const FiniteColourSystem& v, const std::string& name = "V");
std::string to_dot(const ColouredGraph& g, const std::string& name = "G");

// Renders the finite dumps of a certificate (the depth-d systems and root
// balls of a tightness pair, or a violation instance) as one DOT file with
// a cluster per dump.
std::string certificate_to_dot(const Certificate& c);

}  // namespace matchlab
