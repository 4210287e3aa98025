#include "adfd/flows.hpp"

#include <algorithm>
#include <set>

namespace adfd {

std::vector<Flow> enumerate_flows(const Diagram& diagram, const std::string& source,
                                  const std::string& target, FlowUniqueness mode) {
  if (!diagram.has_component(Category::Element, source))
    throw ModelError(ErrorCode::UnknownComponent, "no element with id '" + source + "'");
  if (!diagram.has_component(Category::Element, target))
    throw ModelError(ErrorCode::UnknownComponent, "no element with id '" + target + "'");

  struct Frame {
    std::size_t path_index;  // where this frame's element sits in `path`
    std::size_t next_edge = 0;
  };

  std::vector<Flow> out;
  std::vector<Frame> stack;
  std::vector<std::string> path{source};
  std::set<std::string> used;  // path elements or used connectors, per mode

  stack.push_back({0});
  if (mode == FlowUniqueness::Elements) used.insert(source);

  while (!stack.empty()) {
    Frame& frame = stack.back();
    const std::vector<std::string>& edges = diagram.outgoing(path[frame.path_index]);
    bool descended = false;
    while (frame.next_edge < edges.size()) {
      const std::string& connector = edges[frame.next_edge++];
      if (mode == FlowUniqueness::Connectors && used.count(connector)) continue;
      const std::string& next = diagram.target_of(connector);
      if (next == target && (mode == FlowUniqueness::Connectors || target != source)) {
        // A branch ends the first time it reaches the target, so the target
        // only ever occupies the final position.
        path.push_back(connector);
        path.push_back(next);
        out.emplace_back(path);
        path.pop_back();
        path.pop_back();
        continue;
      }
      if (mode == FlowUniqueness::Elements && used.count(next)) continue;
      used.insert(mode == FlowUniqueness::Connectors ? connector : next);
      path.push_back(connector);
      path.push_back(next);
      stack.push_back({path.size() - 1});
      descended = true;
      break;
    }
    if (descended) continue;
    stack.pop_back();
    if (path.size() > 1) {
      if (mode == FlowUniqueness::Elements) used.erase(path.back());
      path.pop_back();
      if (mode == FlowUniqueness::Connectors) used.erase(path.back());
      path.pop_back();
    }
  }

  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace adfd
