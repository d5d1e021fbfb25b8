#pragma once

#include "homcalc/rootdata.hpp"

namespace homcalc {

/// X = G/H: the connected group G, the stabilizer H and how H sits in G.
struct SpaceDescriptor {
  GroupDescriptor g;
  GroupDescriptor h;
  EmbeddingDescriptor e;
};

}  // namespace homcalc
