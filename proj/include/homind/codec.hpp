#pragma once

// Text and JSON codecs for graphs; encode is deterministic and decode is its
// left inverse. Text format, one record:
//   n=<int>; e=<u-v>,...; l=<label>:<vertex>,...
// with the e and l sections optional. JSON form:
//   {"n": 3, "edges": [[0,1]], "labels": {"1": 0}}

#include <string>

#include "homind/graph.hpp"

namespace homind {

std::string encode_graph(const LabelledGraph& g);
std::string encode_graph_json(const LabelledGraph& g);
// sniffs the format: leading '{' means JSON
LabelledGraph decode_graph(const std::string& text);
LabelledGraph read_graph_file(const std::string& path);

} // namespace homind
