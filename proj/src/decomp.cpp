#include "sole/decomp.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "sole/text.hpp"

namespace sole {

namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

// Tree check for a node count plus an edge list; returns adjacency lists of
// (neighbor, edge index). Empty optional on failure.
std::optional<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>> tree_adjacency(
    std::size_t nodes, std::span<const std::pair<std::size_t, std::size_t>> edges) {
  if (nodes == 0 || edges.size() + 1 != nodes) return std::nullopt;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nodes);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, b] = edges[i];
    if (a >= nodes || b >= nodes || a == b) return std::nullopt;
    adj[a].push_back({b, i});
    adj[b].push_back({a, i});
  }
  std::vector<char> seen(nodes, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (auto [y, e] : adj[x]) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != nodes) return std::nullopt;
  return adj;
}

// Nodes reachable from `start` without crossing edge `cut`.
std::vector<char> side_of(const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& adj,
                          std::size_t start, std::size_t cut) {
  std::vector<char> side(adj.size(), 0);
  std::vector<std::size_t> stack{start};
  side[start] = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (auto [y, e] : adj[x]) {
      if (e != cut && !side[y]) {
        side[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return side;
}

std::vector<std::pair<std::size_t, std::size_t>> cedge_pairs(const SeparatorDecomposition& c) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(c.edges.size());
  for (const auto& e : c.edges) out.push_back({e.a, e.b});
  return out;
}

std::vector<Vertex> sorted_union(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Vertex> sorted_copy(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

// ------------------------------------------------------------ degree 3

Degree3Tree reduce_to_degree3(const Graph& g) {
  if (!g.is_tree()) throw InputError("graph is not a tree");
  Degree3Tree out;
  std::unordered_set<std::string> used;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out.tree.add_vertex(g.name(v));
    used.insert(g.name(v));
    out.representative.push_back(v);
    out.owner.push_back(v);
  }

  std::vector<std::array<Vertex, 2>> ends;
  for (const Edge& e : g.edges()) ends.push_back({e.u, e.v});
  std::vector<std::pair<Vertex, Vertex>> chain;

  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const std::size_t d = g.degree(v);
    if (d <= 3) continue;
    std::vector<Vertex> gadget{v};
    for (std::size_t i = 1; i + 2 < d; ++i) {
      std::string name = g.name(v) + std::string(i, '\'');
      while (used.contains(name)) name += '\'';
      used.insert(name);
      gadget.push_back(out.tree.add_vertex(name));
      out.owner.push_back(v);
    }
    const auto arcs = g.neighbors(v);
    for (std::size_t idx = 0; idx < d; ++idx) {
      const std::size_t slot = idx <= 1 ? 0 : (idx + 2 >= d ? d - 3 : idx - 1);
      const Edge& e = g.edges()[arcs[idx].edge];
      ends[arcs[idx].edge][e.u == v ? 0 : 1] = gadget[slot];
    }
    for (std::size_t i = 0; i + 1 < gadget.size(); ++i) chain.push_back({gadget[i], gadget[i + 1]});
  }

  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    out.tree.add_edge(ends[i][0], ends[i][1], g.edges()[i].length);
  }
  for (auto [a, b] : chain) out.tree.add_edge(a, b, 0);
  return out;
}

// ------------------------------------------------------------ centroid tree

std::vector<int> CentroidTree::path_from_root(int node) const {
  std::vector<int> path;
  for (int x = node; x != kNone; x = parent_[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

int CentroidTree::height() const {
  int best = 0;
  for (std::size_t v = 0; v < vertex_count_; ++v) best = std::max(best, depth_[v]);
  return best;
}

CentroidTree build_centroid_tree(std::size_t vertex_count,
                                 std::span<const std::pair<Vertex, Vertex>> edges) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs(edges.begin(), edges.end());
  auto adj = tree_adjacency(vertex_count, pairs);
  if (!adj) throw InputError("centroid decomposition input is not a tree");
  for (std::size_t v = 0; v < vertex_count; ++v) {
    if ((*adj)[v].size() > 3) {
      throw InputError("centroid decomposition input has a vertex of degree " +
                       std::to_string((*adj)[v].size()));
    }
  }

  CentroidTree t;
  const std::size_t total = vertex_count + edges.size();
  t.vertex_count_ = vertex_count;
  t.parent_.assign(total, CentroidTree::kNone);
  t.children_.assign(total, {CentroidTree::kNone, CentroidTree::kNone});

  std::vector<char> removed(edges.size(), 0);
  struct Work {
    std::size_t start;
    int parent;
    int side;
  };
  std::vector<Work> work{{0, CentroidTree::kNone, 0}};
  std::vector<std::size_t> order, up_edge, up_vertex, sub(vertex_count, 0);
  up_edge.assign(vertex_count, kUnset);
  up_vertex.assign(vertex_count, kUnset);

  while (!work.empty()) {
    const Work item = work.back();
    work.pop_back();

    order.clear();
    order.push_back(item.start);
    up_edge[item.start] = kUnset;
    up_vertex[item.start] = kUnset;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::size_t x = order[i];
      for (auto [y, e] : (*adj)[x]) {
        if (removed[e] || y == up_vertex[x]) continue;
        up_vertex[y] = x;
        up_edge[y] = e;
        order.push_back(y);
      }
    }

    int node;
    if (order.size() == 1) {
      node = static_cast<int>(item.start);
    } else {
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        sub[*it] = 1;
        for (auto [y, e] : (*adj)[*it]) {
          if (!removed[e] && y != up_vertex[*it]) sub[*it] += sub[y];
        }
      }
      const std::size_t n = order.size();
      std::size_t best = kUnset, best_larger = kUnset;
      for (std::size_t x : order) {
        if (up_edge[x] == kUnset) continue;
        const std::size_t larger = std::max(sub[x], n - sub[x]);
        if (larger < best_larger || (larger == best_larger && up_edge[x] < best)) {
          best_larger = larger;
          best = up_edge[x];
        }
      }
      removed[best] = 1;
      node = static_cast<int>(vertex_count + best);
      work.push_back({edges[best].second, node, 1});
      work.push_back({edges[best].first, node, 0});
    }
    t.parent_[node] = item.parent;
    if (item.parent == CentroidTree::kNone) {
      t.root_ = node;
    } else {
      t.children_[item.parent][item.side] = node;
    }
  }

  t.depth_.assign(total, 0);
  t.part_size_.assign(total, 0);
  t.tin_.assign(total, 0);
  t.tout_.assign(total, 0);
  int clock = 0;
  std::vector<std::pair<int, bool>> stack{{t.root_, false}};
  while (!stack.empty()) {
    auto [x, done] = stack.back();
    stack.pop_back();
    if (done) {
      t.tout_[x] = clock;
      if (t.is_leaf(x)) {
        t.part_size_[x] = 1;
      } else {
        t.part_size_[x] = t.part_size_[t.children_[x][0]] + t.part_size_[t.children_[x][1]];
      }
      continue;
    }
    t.tin_[x] = clock++;
    stack.push_back({x, true});
    if (!t.is_leaf(x)) {
      for (int side : {1, 0}) {
        const int c = t.children_[x][side];
        t.depth_[c] = t.depth_[x] + 1;
        stack.push_back({c, false});
      }
    }
  }
  return t;
}

// ------------------------------------------------------------ separator decompositions

std::size_t SeparatorDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& e : edges) w = std::max(w, e.bag.size());
  return w;
}

void SeparatorDecomposition::assign_default_homes(std::size_t vertex_count) {
  home.resize(vertex_count, kUnset);
  for (Vertex v = 0; v < vertex_count; ++v) {
    if (home[v] < edges.size()) {
      const auto& bag = edges[home[v]].bag;
      if (std::find(bag.begin(), bag.end(), v) != bag.end()) continue;
    }
    home[v] = kUnset;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& bag = edges[i].bag;
      if (std::find(bag.begin(), bag.end(), v) != bag.end()) {
        home[v] = i;
        break;
      }
    }
  }
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (ok ? "valid" : "invalid") << ", width " << width;
  for (const auto& v : violations) os << "\n  violation: " << v;
  for (const auto& w : warnings) os << "\n  warning: " << w;
  return os.str();
}

ValidationReport validate_separator_decomposition(const Graph& g, const SeparatorDecomposition& c,
                                                  std::optional<std::size_t> max_width) {
  ValidationReport report;
  auto violate = [&](std::string what) {
    report.ok = false;
    report.violations.push_back(std::move(what));
  };
  const std::size_t n = g.vertex_count();
  report.width = c.width();

  if (c.edges.empty()) violate("decomposition has no edges");
  const auto pairs = cedge_pairs(c);
  auto adj = tree_adjacency(c.node_names.size(), pairs);
  if (!adj) {
    violate("decomposition is not a tree");
  } else {
    for (std::size_t x = 0; x < adj->size(); ++x) {
      if ((*adj)[x].size() > 3) violate("node " + c.node_names[x] + " has degree above 3");
    }
  }

  std::vector<char> covered(n, 0);
  bool bags_sane = true;
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const auto& bag = c.edges[i].bag;
    for (Vertex v : bag) {
      if (v >= n) {
        violate("edge " + std::to_string(i) + " bag holds unknown vertex id " + std::to_string(v));
        bags_sane = false;
      } else {
        covered[v] = 1;
      }
    }
    if (sorted_copy(bag).size() != bag.size()) {
      violate("edge " + std::to_string(i) + " bag repeats a vertex");
    }
    if (max_width && bag.size() > *max_width) {
      violate("edge " + std::to_string(i) + " bag has " + std::to_string(bag.size()) +
              " vertices, above " + std::to_string(*max_width));
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!covered[v]) violate("vertex " + g.name(v) + " is in no bag");
  }
  if (c.home.size() != n) {
    violate("home table has the wrong size");
  } else {
    for (Vertex v = 0; v < n; ++v) {
      const std::size_t h = c.home[v];
      if (h >= c.edges.size()) {
        violate("vertex " + g.name(v) + " has no home edge");
        continue;
      }
      const auto& bag = c.edges[h].bag;
      if (std::find(bag.begin(), bag.end(), v) == bag.end()) {
        violate("home edge of " + g.name(v) + " does not hold it");
      }
    }
  }
  if (c.node_names.size() > 4 * n) {
    report.warnings.push_back("decomposition has " + std::to_string(c.node_names.size()) +
                              " nodes, more than 4n = " + std::to_string(4 * n));
  }
  if (!adj || !bags_sane) return report;

  // Separator property, edge by edge.
  std::vector<char> in_bag(n), in_v2(n), seen(n);
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    const auto side = side_of(*adj, c.edges[i].a, i);
    std::fill(in_bag.begin(), in_bag.end(), 0);
    std::fill(in_v2.begin(), in_v2.end(), 0);
    std::fill(seen.begin(), seen.end(), 0);
    for (Vertex v : c.edges[i].bag) in_bag[v] = 1;
    std::vector<Vertex> frontier;
    for (std::size_t j = 0; j < c.edges.size(); ++j) {
      if (j == i) continue;
      const bool first_side = side[c.edges[j].a] != 0;
      for (Vertex v : c.edges[j].bag) {
        if (in_bag[v]) continue;
        if (first_side) {
          if (!seen[v]) {
            seen[v] = 1;
            frontier.push_back(v);
          }
        } else {
          in_v2[v] = 1;
        }
      }
    }
    bool crossed = false;
    while (!frontier.empty() && !crossed) {
      const Vertex x = frontier.back();
      frontier.pop_back();
      if (in_v2[x]) crossed = true;
      for (const Arc& arc : g.neighbors(x)) {
        if (in_bag[arc.to] || seen[arc.to]) continue;
        seen[arc.to] = 1;
        frontier.push_back(arc.to);
      }
    }
    if (crossed) {
      violate("bag of edge " + std::to_string(i) + " (" + c.node_names[c.edges[i].a] + ", " +
              c.node_names[c.edges[i].b] + ") does not separate its sides");
    }
  }
  return report;
}

SeparatorDecomposition parse_decomposition(std::istream& in, const Graph& g) {
  SeparatorDecomposition c;
  std::unordered_map<std::string, std::size_t> nodes;
  std::vector<std::pair<Vertex, std::size_t>> homes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_tokens(line);
    if (tokens.empty()) continue;
    try {
      if (tokens[0] == "cnode") {
        expect_arity(tokens, 2);
        if (nodes.contains(tokens[1])) throw InputError("duplicate node '" + tokens[1] + "'");
        nodes.emplace(tokens[1], c.node_names.size());
        c.node_names.push_back(tokens[1]);
      } else if (tokens[0] == "cedge") {
        if (tokens.size() != 3 && tokens.size() != 4) {
          throw InputError("'cedge' takes two nodes and an optional bag");
        }
        auto node = [&](const std::string& name) {
          auto it = nodes.find(name);
          if (it == nodes.end()) throw InputError("unknown node '" + name + "'");
          return it->second;
        };
        SeparatorDecomposition::CEdge e{node(tokens[1]), node(tokens[2]), {}};
        if (tokens.size() == 4 && tokens[3] != "-") {
          std::string_view rest = tokens[3];
          while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto name = rest.substr(0, comma);
            if (name.empty()) throw InputError("empty vertex name in bag");
            e.bag.push_back(g.vertex(name));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
            if (rest.empty()) throw InputError("trailing comma in bag");
          }
        }
        c.edges.push_back(std::move(e));
      } else if (tokens[0] == "home") {
        expect_arity(tokens, 3);
        const Dist idx = parse_int(tokens[2]);
        if (idx < 0) throw InputError("negative edge index");
        homes.push_back({g.vertex(tokens[1]), static_cast<std::size_t>(idx)});
      } else {
        throw InputError("unknown directive '" + tokens[0] + "'");
      }
    } catch (const InputError& e) {
      throw InputError("decomposition line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  c.home.assign(g.vertex_count(), kUnset);
  for (auto [v, idx] : homes) {
    if (idx >= c.edges.size()) {
      throw InputError("home of '" + g.name(v) + "' refers to missing edge " + std::to_string(idx));
    }
    const auto& bag = c.edges[idx].bag;
    if (std::find(bag.begin(), bag.end(), v) == bag.end()) {
      throw InputError("home edge " + std::to_string(idx) + " does not hold '" + g.name(v) + "'");
    }
    c.home[v] = idx;
  }
  c.assign_default_homes(g.vertex_count());
  return c;
}

SeparatorDecomposition load_decomposition(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open decomposition file '" + path + "'");
  return parse_decomposition(in, g);
}

void write_decomposition(std::ostream& out, const Graph& g, const SeparatorDecomposition& c) {
  for (const auto& name : c.node_names) out << "cnode " << name << '\n';
  for (const auto& e : c.edges) {
    out << "cedge " << c.node_names[e.a] << ' ' << c.node_names[e.b] << ' ';
    if (e.bag.empty()) out << '-';
    for (std::size_t j = 0; j < e.bag.size(); ++j) out << (j ? "," : "") << g.name(e.bag[j]);
    out << '\n';
  }
  for (Vertex v = 0; v < c.home.size(); ++v) out << "home " << g.name(v) << ' ' << c.home[v] << '\n';
}

// ------------------------------------------------------------ conversions

std::size_t TreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& b : bags) w = std::max(w, b.size());
  return w == 0 ? 0 : w - 1;
}

void validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  const std::size_t n = g.vertex_count();
  if (!tree_adjacency(td.bags.size(), td.edges)) throw InputError("tree decomposition is not a tree");
  std::vector<std::size_t> holders(n, 0);
  std::vector<std::vector<char>> member(td.bags.size(), std::vector<char>(n, 0));
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    for (Vertex v : td.bags[i]) {
      if (v >= n) throw InputError("tree decomposition bag holds unknown vertex");
      if (member[i][v]) throw InputError("tree decomposition bag repeats a vertex");
      member[i][v] = 1;
      ++holders[v];
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (holders[v] == 0) throw InputError("vertex " + g.name(v) + " is in no bag");
  }
  for (const Edge& e : g.edges()) {
    bool found = false;
    for (std::size_t i = 0; i < td.bags.size() && !found; ++i) found = member[i][e.u] && member[i][e.v];
    if (!found) throw InputError("edge " + g.name(e.u) + "-" + g.name(e.v) + " is in no bag");
  }
  // Nodes holding v form a subtree iff they span holders[v] - 1 tree edges.
  std::vector<std::size_t> spans(n, 0);
  for (auto [a, b] : td.edges) {
    for (Vertex v : td.bags[a]) spans[v] += member[b][v];
  }
  for (Vertex v = 0; v < n; ++v) {
    if (spans[v] + 1 != holders[v]) {
      throw InputError("bags holding " + g.name(v) + " are not connected");
    }
  }
}

TreeDecomposition binarize(const TreeDecomposition& td) {
  TreeDecomposition out{td.bags, {}};
  std::vector<std::array<std::size_t, 2>> ends;
  for (auto [a, b] : td.edges) ends.push_back({a, b});
  std::vector<std::vector<std::pair<std::size_t, int>>> incident(td.bags.size());
  for (std::size_t i = 0; i < td.edges.size(); ++i) {
    incident[td.edges[i].first].push_back({i, 0});
    incident[td.edges[i].second].push_back({i, 1});
  }
  std::vector<std::pair<std::size_t, std::size_t>> chain;
  for (std::size_t x = 0; x < td.bags.size(); ++x) {
    const std::size_t d = incident[x].size();
    if (d <= 3) continue;
    std::vector<std::size_t> copies{x};
    for (std::size_t i = 1; i + 2 < d; ++i) {
      copies.push_back(out.bags.size());
      out.bags.push_back(td.bags[x]);
    }
    for (std::size_t idx = 0; idx < d; ++idx) {
      const std::size_t slot = idx <= 1 ? 0 : (idx + 2 >= d ? d - 3 : idx - 1);
      ends[incident[x][idx].first][incident[x][idx].second] = copies[slot];
    }
    for (std::size_t i = 0; i + 1 < copies.size(); ++i) chain.push_back({copies[i], copies[i + 1]});
  }
  for (const auto& e : ends) out.edges.push_back({e[0], e[1]});
  out.edges.insert(out.edges.end(), chain.begin(), chain.end());
  return out;
}

TreeDecomposition subdivide_with_intersections(const TreeDecomposition& td) {
  TreeDecomposition out;
  for (const auto& b : td.bags) out.bags.push_back(sorted_copy(b));
  for (auto [a, b] : td.edges) {
    std::vector<Vertex> common;
    std::set_intersection(out.bags[a].begin(), out.bags[a].end(), out.bags[b].begin(),
                          out.bags[b].end(), std::back_inserter(common));
    const std::size_t mid = out.bags.size();
    out.bags.push_back(std::move(common));
    out.edges.push_back({a, mid});
    out.edges.push_back({mid, b});
  }
  return out;
}

SeparatorDecomposition from_nice_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  validate_tree_decomposition(g, td);
  std::vector<std::size_t> degree(td.bags.size(), 0);
  for (auto [a, b] : td.edges) {
    ++degree[a];
    ++degree[b];
  }
  for (std::size_t d : degree) {
    if (d > 3) throw InputError("tree decomposition node has degree above 3");
  }
  SeparatorDecomposition c;
  if (td.bags.size() == 1) {
    c.node_names = {"t0", "t0'"};
    c.edges.push_back({0, 1, sorted_copy(td.bags[0])});
  } else {
    for (std::size_t i = 0; i < td.bags.size(); ++i) c.node_names.push_back("t" + std::to_string(i));
    for (auto [a, b] : td.edges) {
      c.edges.push_back({a, b, sorted_union(sorted_copy(td.bags[a]), sorted_copy(td.bags[b]))});
    }
  }
  c.assign_default_homes(g.vertex_count());
  return c;
}

SeparatorDecomposition from_branch_decomposition(const Graph& g, const BranchDecomposition& bd) {
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  if (bd.leaf_edge.size() != bd.node_count) throw InputError("leaf map has the wrong size");
  SeparatorDecomposition c;

  if (m == 0) {
    if (n != 1) throw InputError("graph without edges must have a single vertex");
    c.node_names = {"b0", "b0'"};
    c.edges.push_back({0, 1, {0}});
    c.assign_default_homes(n);
    return c;
  }

  auto adj = tree_adjacency(bd.node_count, bd.edges);
  if (!adj) throw InputError("branch decomposition is not a tree");
  std::vector<std::size_t> owner(m, kUnset);
  for (std::size_t x = 0; x < bd.node_count; ++x) {
    const std::size_t d = (*adj)[x].size();
    if (d > 3) throw InputError("branch decomposition node has degree above 3");
    const bool leaf = d <= 1;
    if (leaf != bd.leaf_edge[x].has_value()) {
      throw InputError("branch decomposition leaves and mapped nodes differ");
    }
    if (!bd.leaf_edge[x]) continue;
    const std::size_t e = *bd.leaf_edge[x];
    if (e >= m || owner[e] != kUnset) throw InputError("leaf map is not a bijection onto edges");
    owner[e] = x;
  }
  for (std::size_t e = 0; e < m; ++e) {
    if (owner[e] == kUnset) throw InputError("graph edge without a leaf");
  }

  for (std::size_t i = 0; i < bd.node_count; ++i) c.node_names.push_back("b" + std::to_string(i));
  if (bd.node_count == 1) {
    const Edge& e = g.edges()[0];
    c.node_names.push_back("b0'");
    c.edges.push_back({0, 1, sorted_copy({e.u, e.v})});
    c.assign_default_homes(n);
    return c;
  }

  std::vector<std::size_t> side_count(n);
  for (std::size_t i = 0; i < bd.edges.size(); ++i) {
    auto [a, b] = bd.edges[i];
    std::vector<Vertex> bag;
    std::optional<std::size_t> leaf_edge = bd.leaf_edge[a] ? bd.leaf_edge[a] : bd.leaf_edge[b];
    if (leaf_edge) {
      const Edge& e = g.edges()[*leaf_edge];
      bag = sorted_copy({e.u, e.v});
    } else {
      const auto side = side_of(*adj, a, i);
      std::fill(side_count.begin(), side_count.end(), 0);
      for (std::size_t e = 0; e < m; ++e) {
        if (!side[owner[e]]) continue;
        ++side_count[g.edges()[e].u];
        ++side_count[g.edges()[e].v];
      }
      for (Vertex v = 0; v < n; ++v) {
        if (side_count[v] > 0 && side_count[v] < g.degree(v)) bag.push_back(v);
      }
    }
    c.edges.push_back({a, b, std::move(bag)});
  }
  c.assign_default_homes(n);
  return c;
}

}  // namespace sole
