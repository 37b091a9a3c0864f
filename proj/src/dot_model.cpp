#include "trrg/dot_model.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "trrg/errors.hpp"

namespace trrg {

namespace {

std::vector<std::string> split(std::string_view text, char separator) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto next = text.find(separator, start);
    std::string_view part = text.substr(start, next == std::string_view::npos ? text.size() - start : next - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (!part.empty()) parts.emplace_back(part);
    if (next == std::string_view::npos) break;
    start = next + 1;
  }
  return parts;
}

bool flag(const DotAttributes& attrs, const std::string& key, const std::string& owner) {
  auto it = attrs.find(key);
  if (it == attrs.end()) return false;
  if (it->second == "true") return true;
  if (it->second == "false") return false;
  throw ModelError(owner + ": attribute " + key + "=\"" + it->second + "\" must be \"true\" or \"false\"");
}

Guard guard_attribute(const std::string& text, const std::string& owner) {
  try {
    return parse_guard(text);
  } catch (const DomainError& e) {
    throw ModelError(owner + ": malformed guard \"" + text + "\": " + e.what());
  }
}

std::string join(const std::vector<std::string>& items, const std::string& separator) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += separator;
    out += item;
  }
  return out;
}

}  // namespace

TimedModel parse_model(const DotDocument& document) {
  std::vector<std::string> alphabet;
  std::vector<std::string> clocks;
  if (auto it = document.graph_attributes.find("actions"); it != document.graph_attributes.end()) {
    alphabet = split(it->second, ',');
  }
  if (auto it = document.graph_attributes.find("clocks"); it != document.graph_attributes.end()) {
    clocks = split(it->second, ',');
  }

  std::vector<Location> locations;
  std::vector<std::string> initials;
  for (const auto& node : document.nodes) {
    const std::string owner = "node " + node.id;
    Location loc{node.id, {}, flag(node.attributes, "final", owner)};
    if (flag(node.attributes, "initial", owner)) initials.push_back(node.id);
    if (auto it = node.attributes.find("durations"); it != node.attributes.end()) {
      for (const auto& part : split(it->second, ';')) loc.durations.push_back(guard_attribute(part, owner));
    }
    locations.push_back(std::move(loc));
  }
  if (initials.empty()) throw ModelError("no node carries initial=\"true\"");
  if (initials.size() > 1) throw ModelError("several initial nodes: " + join(initials, ", "));

  std::vector<Edge> edges;
  for (const auto& e : document.edges) {
    const std::string owner = "edge " + e.source + " -> " + e.target;
    Edge edge;
    edge.source = e.source;
    edge.target = e.target;
    auto label = e.attributes.find("label");
    if (label == e.attributes.end() || label->second.empty()) throw ModelError(owner + ": missing label (action)");
    edge.action = label->second;
    if (!is_token(edge.action)) throw ModelError(owner + ": action '" + edge.action + "' is not a [A-Za-z0-9_]+ token");
    if (auto it = e.attributes.find("guard"); it != e.attributes.end()) edge.guard = guard_attribute(it->second, owner);
    if (auto it = e.attributes.find("reset"); it != e.attributes.end() && !it->second.empty()) {
      if (!is_token(it->second)) throw ModelError(owner + ": reset clock '" + it->second + "' is not a token");
      edge.reset = it->second;
      clocks.push_back(it->second);
    }
    alphabet.push_back(edge.action);
    edges.push_back(std::move(edge));
  }

  TimedModel model(std::move(locations), initials.front(), std::move(clocks), std::move(edges), std::move(alphabet));
  std::string errors;
  for (const auto& d : validate_model(model)) {
    if (d.severity != Severity::Error) continue;
    if (!errors.empty()) errors += "; ";
    errors += d.subject + ": " + d.message;
  }
  if (!errors.empty()) throw ModelError(errors);
  return model;
}

TimedModel parse_model_text(std::string_view text) { return parse_model(parse_dot(text)); }

DotDocument emit_model(const TimedModel& model) {
  DotDocument doc;
  doc.name = "data";
  doc.graph_attributes["actions"] = join(model.alphabet(), ",");
  doc.graph_attributes["clocks"] = join(model.clocks(), ",");

  std::vector<const Location*> locations;
  for (const auto& loc : model.locations()) locations.push_back(&loc);
  std::sort(locations.begin(), locations.end(), [](const Location* a, const Location* b) { return a->name < b->name; });
  for (const Location* loc : locations) {
    DotNode node{loc->name, {}};
    if (loc->name == model.initial()) node.attributes["initial"] = "true";
    if (loc->is_final) node.attributes["final"] = "true";
    if (!loc->durations.empty()) {
      std::vector<std::string> parts;
      for (const auto& d : loc->durations) parts.push_back(d.normalized().to_string());
      node.attributes["durations"] = join(parts, ";");
    }
    doc.nodes.push_back(std::move(node));
  }

  std::vector<std::tuple<std::string, std::string, std::string, std::string, std::string>> edges;
  for (const auto& e : model.edges()) {
    const Guard g = e.guard.normalized();
    edges.emplace_back(e.source, e.action, e.target, g.is_true() ? "" : g.to_string(), e.reset.value_or(""));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [source, action, target, guard, reset] : edges) {
    DotEdge edge{source, target, {{"label", action}}};
    if (!guard.empty()) edge.attributes["guard"] = guard;
    if (!reset.empty()) edge.attributes["reset"] = reset;
    doc.edges.push_back(std::move(edge));
  }
  return doc;
}

DotDocument emit_decorated(const DeterministicModel& model, const Decorations& decorations) {
  DotDocument doc = emit_model(model.model);
  doc.name = "decorated";
  for (auto& node : doc.nodes) {
    auto it = decorations.find(node.id);
    if (it == decorations.end()) continue;
    node.attributes["forb"] = it->second.forbidden_string();
    node.attributes["perm"] = it->second.permanent_string();
    node.attributes["temp"] = it->second.temporary_string();
    node.attributes["members"] = join(model.subset(node.id).members, ",");
  }
  return doc;
}

DotDocument emit_tester(const TesterGraph& graph, std::vector<std::string> comments) {
  DotDocument doc;
  doc.name = graph.is_tester() ? "tester" : "trrg";
  doc.comments = std::move(comments);
  doc.graph_attributes["actions"] = join(graph.alphabet(), ",");
  doc.graph_attributes["clocks"] = join(graph.space()->clocks(), ",");

  std::vector<std::pair<std::string, std::size_t>> order;
  for (std::size_t i = 0; i < graph.states().size(); ++i) order.emplace_back(graph.state_id(i), i);
  std::sort(order.begin(), order.end());
  for (const auto& [id, index] : order) {
    const SymbolicState& s = graph.state(index);
    DotNode node{id, {}};
    if (s.is_fail_sink) {
      node.attributes["fail"] = "true";
    } else {
      node.attributes["base"] = s.base;
      node.attributes["region"] = s.region.to_string();
      node.attributes["forb"] = s.refusals.forbidden_string();
      node.attributes["perm"] = s.refusals.permanent_string();
      node.attributes["temp"] = s.refusals.temporary_string();
      if (s.is_final) node.attributes["final"] = "true";
      if (index == graph.initial()) node.attributes["initial"] = "true";
    }
    if (graph.is_tester()) node.attributes["verdict"] = std::string(to_string(graph.verdict(index)));
    doc.nodes.push_back(std::move(node));
  }

  std::vector<std::tuple<std::string, std::string, std::string, std::string, std::string>> edges;
  for (const auto& e : graph.edges()) {
    edges.emplace_back(graph.state_id(e.source), e.action, graph.state_id(e.target),
                       e.witness ? e.witness->to_string() : "*", e.reset.value_or(""));
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& [source, action, target, witness, reset] : edges) {
    DotEdge edge{source, target, {{"label", action}, {"witness", witness}}};
    if (!reset.empty()) edge.attributes["reset"] = reset;
    doc.edges.push_back(std::move(edge));
  }
  return doc;
}

std::string canonical_text(const TimedModel& model) { return write_dot(emit_model(model)); }

}  // namespace trrg
