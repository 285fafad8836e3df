#pragma once

#include <string>

#include "gcf237/engine.hpp"

namespace gcf237 {

// Upper-half-plane picture: the heptagon tiles B_k D for k = 0..tiles, the
// input geodesic, edge labels e_i and the vertices tau3, tau7.  Fixed viewport
// [-2.5, 2.5] x [0, 3]; geodesics drawn as circular arcs.
std::string render_svg(ExpansionSession& s, int tiles);

}  // namespace gcf237
