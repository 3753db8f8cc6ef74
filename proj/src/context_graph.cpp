#include "quadchase/context_graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include <json.hpp>

#include "quadchase/error.hpp"

namespace quadchase {

namespace {

bool has_existential(const QuadPattern& p, const std::vector<std::string>& existentials) {
  return std::any_of(p.terms.begin(), p.terms.end(), [&](const Term& t) {
    return t.is_variable() &&
           std::find(existentials.begin(), existentials.end(), t.variable().name) != existentials.end();
  });
}

std::string node_name(Constant c) { return c.is_iri() ? c.value() : c.canonical(); }

}  // namespace

ContextDependencyGraph ContextDependencyGraph::build(const QuadSystem& qs) {
  ContextDependencyGraph g;
  std::set<Constant> nodes;
  for (Constant c : qs.quads.contexts()) nodes.insert(c);
  std::set<Constant> tgcs;
  std::map<std::pair<Constant, Constant>, std::vector<std::string>> edges;
  for (const BridgeRule& r : qs.rules) {
    for (const QuadPattern& p : r.body()) nodes.insert(p.context);
    for (const QuadPattern& h : r.head()) {
      nodes.insert(h.context);
      if (has_existential(h, r.existentials())) tgcs.insert(h.context);
      for (const QuadPattern& b : r.body()) {
        auto& ids = edges[{b.context, h.context}];
        if (ids.empty() || ids.back() != r.id()) ids.push_back(r.id());
      }
    }
  }
  g.nodes_.assign(nodes.begin(), nodes.end());
  g.tgc_.resize(g.nodes_.size());
  g.succ_.resize(g.nodes_.size());
  for (std::size_t i = 0; i < g.nodes_.size(); ++i) g.tgc_[i] = tgcs.count(g.nodes_[i]) != 0;
  for (auto& [key, ids] : edges) {
    g.edges_.push_back({key.first, key.second, ids});
    g.succ_[*g.index_of(key.first)].push_back(*g.index_of(key.second));
  }
  for (auto& s : g.succ_) std::sort(s.begin(), s.end());
  return g;
}

std::optional<std::size_t> ContextDependencyGraph::index_of(Constant c) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), c);
  if (it == nodes_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool ContextDependencyGraph::is_tgc(Constant c) const {
  auto i = index_of(c);
  return i && tgc_[*i];
}

std::vector<Constant> ContextDependencyGraph::tgcs() const {
  std::vector<Constant> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (tgc_[i]) out.push_back(nodes_[i]);
  }
  return out;
}

bool ContextDependencyGraph::has_edge(Constant from, Constant to) const {
  auto a = index_of(from);
  auto b = index_of(to);
  if (!a || !b) return false;
  return std::binary_search(succ_[*a].begin(), succ_[*a].end(), *b);
}

namespace {

/// Tarjan's algorithm; components come out in reverse topological order.
struct Condensation {
  std::vector<std::size_t> component;
  std::vector<std::vector<std::size_t>> members;
};

Condensation condense(const ContextDependencyGraph& g) {
  const std::size_t n = g.nodes().size();
  Condensation out;
  out.component.assign(n, SIZE_MAX);
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;

  // Iterative DFS to stay safe on long context chains.
  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != SIZE_MAX) continue;
    std::vector<Frame> dfs{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!dfs.empty()) {
      Frame& f = dfs.back();
      const auto& succ = g.successors(f.node);
      if (f.next < succ.size()) {
        std::size_t w = succ[f.next++];
        if (index[w] == SIZE_MAX) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          dfs.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      std::size_t v = f.node;
      dfs.pop_back();
      if (!dfs.empty()) low[dfs.back().node] = std::min(low[dfs.back().node], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> members;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component[w] = out.members.size();
          members.push_back(w);
        } while (w != v);
        std::sort(members.begin(), members.end());
        out.members.push_back(std::move(members));
      }
    }
  }
  return out;
}

bool on_cycle(const ContextDependencyGraph& g, const Condensation& cond, std::size_t v) {
  if (cond.members[cond.component[v]].size() > 1) return true;
  const auto& succ = g.successors(v);
  return std::binary_search(succ.begin(), succ.end(), v);
}

/// Shortest cycle v -> ... -> v by BFS over ascending successors.
std::vector<std::size_t> shortest_cycle(const ContextDependencyGraph& g, std::size_t v) {
  const std::size_t n = g.nodes().size();
  std::vector<std::size_t> parent(n, SIZE_MAX);
  std::deque<std::size_t> queue;
  for (std::size_t w : g.successors(v)) {
    if (w == v) return {v};
    if (parent[w] == SIZE_MAX) {
      parent[w] = v;
      queue.push_back(w);
    }
  }
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t w : g.successors(u)) {
      if (w == v) {
        std::vector<std::size_t> path{u};
        while (parent[path.back()] != v) path.push_back(parent[path.back()]);
        path.push_back(v);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (parent[w] == SIZE_MAX) {
        parent[w] = u;
        queue.push_back(w);
      }
    }
  }
  return {};
}

}  // namespace

AcyclicityVerdict check_context_acyclicity(const ContextDependencyGraph& g) {
  AcyclicityVerdict verdict;
  Condensation cond = condense(g);
  std::vector<std::size_t> best;
  for (std::size_t v = 0; v < g.nodes().size(); ++v) {
    if (!g.is_tgc(v) || !on_cycle(g, cond, v)) continue;
    std::vector<std::size_t> cycle = shortest_cycle(g, v);
    auto smallest = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), smallest, cycle.end());
    if (best.empty() || cycle.size() < best.size() || (cycle.size() == best.size() && cycle < best)) {
      best = std::move(cycle);
    }
  }
  if (best.empty()) return verdict;
  verdict.acyclic = false;
  for (std::size_t i : best) verdict.witness.push_back(g.nodes()[i]);
  verdict.witness.push_back(g.nodes()[best.front()]);
  return verdict;
}

std::string format_cycle(const std::vector<Constant>& cycle) {
  std::string out = "(";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += ", ";
    out += node_name(cycle[i]);
  }
  return out + ")";
}

std::size_t LevelMap::at(Constant c) const {
  auto it = level.find(c);
  if (it == level.end()) throw Error(ErrorCode::kInvalidArgument, "no level for context " + c.canonical());
  return it->second;
}

LevelMap compute_levels(const ContextDependencyGraph& g) {
  AcyclicityVerdict verdict = check_context_acyclicity(g);
  if (!verdict.acyclic) {
    std::vector<std::string> cycle;
    for (Constant c : verdict.witness) cycle.push_back(node_name(c));
    throw NotContextAcyclicError(ErrorCode::kNotContextAcyclic,
                                 "not context acyclic: cycle " + format_cycle(verdict.witness) + " passes through a TGC",
                                 std::move(cycle));
  }
  Condensation cond = condense(g);
  const std::size_t components = cond.members.size();
  std::vector<std::vector<std::size_t>> preds(components);
  for (std::size_t v = 0; v < g.nodes().size(); ++v) {
    for (std::size_t w : g.successors(v)) {
      std::size_t a = cond.component[v];
      std::size_t b = cond.component[w];
      if (a != b) preds[b].push_back(a);
    }
  }
  // Tarjan emits sinks first, so walk components in reverse.
  std::vector<std::size_t> level(components, 0);
  for (std::size_t k = components; k-- > 0;) {
    std::size_t reach = 0;
    for (std::size_t p : preds[k]) reach = std::max(reach, level[p]);
    const auto& members = cond.members[k];
    bool tgc = members.size() == 1 && g.is_tgc(members.front());
    level[k] = reach + (tgc ? 1 : 0);
  }
  LevelMap lm;
  for (std::size_t v = 0; v < g.nodes().size(); ++v) {
    std::size_t l = level[cond.component[v]];
    lm.level.emplace(g.nodes()[v], l);
    lm.max_level = std::max(lm.max_level, l);
  }
  return lm;
}

std::size_t predicted_generating_iterations(const LevelMap& lm) { return lm.max_level; }

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const ContextDependencyGraph& g) {
  std::string out = "digraph contexts {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    std::string name = node_name(g.nodes()[i]);
    out += "  " + dot_quote(name) + " [label=" + dot_quote(g.is_tgc(i) ? name + "*" : name);
    if (g.is_tgc(i)) out += ", shape=box";
    out += "];\n";
  }
  for (const DependencyEdge& e : g.edges()) {
    std::string label;
    for (std::size_t i = 0; i < e.rules.size(); ++i) label += (i ? "," : "") + e.rules[i];
    out += "  " + dot_quote(node_name(e.from)) + " -> " + dot_quote(node_name(e.to)) +
           " [label=" + dot_quote(label) + "];\n";
  }
  return out + "}\n";
}

std::string to_json(const ContextDependencyGraph& g) {
  using nlohmann::ordered_json;
  AcyclicityVerdict verdict = check_context_acyclicity(g);
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  std::optional<LevelMap> levels;
  if (verdict.acyclic) levels = compute_levels(g);
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    ordered_json node;
    node["id"] = node_name(g.nodes()[i]);
    node["tgc"] = g.is_tgc(i);
    if (levels) node["level"] = levels->at(g.nodes()[i]);
    doc["nodes"].push_back(node);
  }
  doc["edges"] = ordered_json::array();
  for (const DependencyEdge& e : g.edges()) {
    doc["edges"].push_back({{"from", node_name(e.from)}, {"to", node_name(e.to)}, {"rules", e.rules}});
  }
  doc["tgcs"] = ordered_json::array();
  for (Constant c : g.tgcs()) doc["tgcs"].push_back(node_name(c));
  doc["context_acyclic"] = verdict.acyclic;
  if (verdict.acyclic) {
    doc["witness"] = nullptr;
    doc["max_level"] = levels->max_level;
    doc["predicted_generating_iterations"] = predicted_generating_iterations(*levels);
  } else {
    doc["witness"] = ordered_json::array();
    for (Constant c : verdict.witness) doc["witness"].push_back(node_name(c));
  }
  return doc.dump(2) + "\n";
}

}  // namespace quadchase
