#include "csft/tree.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace csft {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

std::string edge_text(const Edge& e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

}  // namespace

Tree Tree::from_edges(int n, std::span<const Edge> edges) {
  if (n < 1) throw TreeError("a tree needs at least one vertex");
  if (static_cast<int>(edges.size()) != n - 1) {
    // Still look for a more specific defect first.
    DisjointSets sets(n);
    for (const auto& e : edges) {
      if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n) {
        throw TreeError("edge " + edge_text(e) + " is out of range for " + std::to_string(n) + " vertices");
      }
      if (e.first == e.second) throw TreeError("edge " + edge_text(e) + " is a self-loop");
      if (!sets.unite(e.first, e.second)) throw TreeError("edge " + edge_text(e) + " closes a cycle");
    }
    throw TreeError("graph on " + std::to_string(n) + " vertices with " + std::to_string(edges.size()) +
                    " edges is disconnected");
  }
  std::vector<Edge> seen;
  seen.reserve(edges.size());
  DisjointSets sets(n);
  for (const auto& e : edges) {
    if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n) {
      throw TreeError("edge " + edge_text(e) + " is out of range for " + std::to_string(n) + " vertices");
    }
    if (e.first == e.second) throw TreeError("edge " + edge_text(e) + " is a self-loop");
    Edge key = std::minmax(e.first, e.second);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw TreeError("duplicate edge " + edge_text(e));
    }
    seen.push_back(key);
    if (!sets.unite(e.first, e.second)) throw TreeError("edge " + edge_text(e) + " closes a cycle");
  }

  Tree t;
  t.n_ = n;
  t.offsets_.assign(n + 1, 0);
  for (const auto& e : edges) {
    ++t.offsets_[e.first + 1];
    ++t.offsets_[e.second + 1];
  }
  std::partial_sum(t.offsets_.begin(), t.offsets_.end(), t.offsets_.begin());
  t.targets_.resize(2 * edges.size());
  std::vector<int> fill(t.offsets_.begin(), t.offsets_.end() - 1);
  for (const auto& e : edges) {
    t.targets_[fill[e.first]++] = e.second;
    t.targets_[fill[e.second]++] = e.first;
  }
  for (int v = 0; v < n; ++v) {
    std::sort(t.targets_.begin() + t.offsets_[v], t.targets_.begin() + t.offsets_[v + 1]);
  }
  return t;
}

Tree Tree::from_level_sequence(std::span<const int> levels) {
  if (levels.empty() || levels[0] != 0) throw TreeError("level sequence must start with 0");
  std::vector<Edge> edges;
  edges.reserve(levels.size() - 1);
  std::vector<int> last_at_level{0};
  for (std::size_t i = 1; i < levels.size(); ++i) {
    const int level = levels[i];
    if (level < 1 || level > static_cast<int>(last_at_level.size())) {
      throw TreeError("invalid level " + std::to_string(level) + " at position " + std::to_string(i));
    }
    edges.emplace_back(last_at_level[level - 1], static_cast<int>(i));
    last_at_level.resize(level);
    last_at_level.push_back(static_cast<int>(i));
  }
  return from_edges(static_cast<int>(levels.size()), edges);
}

std::vector<Edge> Tree::edges() const {
  std::vector<Edge> out;
  out.reserve(n_ > 0 ? n_ - 1 : 0);
  for (int u = 0; u < n_; ++u) {
    for (int v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Tree Tree::relabeled(std::span<const int> perm) const {
  std::vector<Edge> out;
  for (const auto& [u, v] : edges()) out.emplace_back(perm[u], perm[v]);
  return from_edges(n_, out);
}

Tree make_path(int n) {
  if (n < 1) throw TreeError("path needs at least one vertex");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Tree::from_edges(n, edges);
}

Tree make_star(int k) {
  if (k < 0) throw TreeError("star needs a nonnegative number of leaves");
  std::vector<Edge> edges;
  for (int i = 1; i <= k; ++i) edges.emplace_back(0, i);
  return Tree::from_edges(k + 1, edges);
}

Tree make_spider(std::span<const int> legs) {
  if (legs.empty()) throw TreeError("spider needs at least one leg");
  std::vector<Edge> edges;
  int next = 1;
  for (int length : legs) {
    if (length < 1) throw TreeError("spider legs must have positive length");
    int previous = 0;
    for (int i = 0; i < length; ++i) {
      edges.emplace_back(previous, next);
      previous = next++;
    }
  }
  return Tree::from_edges(next, edges);
}

Tree make_caterpillar(std::span<const int> alpha) {
  if (alpha.empty()) throw TreeError("caterpillar needs at least one spine vertex");
  if (alpha.front() < 1 || alpha.back() < 1) {
    throw TreeError("caterpillar end spine vertices need at least one leaf each");
  }
  const int d = static_cast<int>(alpha.size());
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < d; ++i) edges.emplace_back(i, i + 1);
  int next = d;
  for (int i = 0; i < d; ++i) {
    if (alpha[i] < 0) throw TreeError("caterpillar leaf counts must be nonnegative");
    for (int j = 0; j < alpha[i]; ++j) edges.emplace_back(i, next++);
  }
  return Tree::from_edges(next, edges);
}

// ---------------------------------------------------------------------------
// Canonical codes

namespace {

std::vector<int> rooted_code(const Tree& t, int root) {
  const int n = t.size();
  std::vector<int> order;
  std::vector<int> parent(n, -1);
  order.reserve(n);
  order.push_back(root);
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int w : t.neighbors(order[i])) {
      if (parent[w] == -1) {
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }
  std::vector<std::vector<int>> code(n);
  std::vector<std::vector<int>> kids(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    auto& children = kids[v];
    std::sort(children.begin(), children.end(), [&](int a, int b) { return code[a] > code[b]; });
    std::vector<int>& mine = code[v];
    mine.push_back(0);
    for (int c : children) {
      for (int level : code[c]) mine.push_back(level + 1);
      std::vector<int>().swap(code[c]);
    }
    if (v != root) kids[parent[v]].push_back(v);
  }
  return std::move(code[root]);
}

std::vector<int> centers(const Tree& t) {
  const int n = t.size();
  if (n <= 2) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  std::vector<int> degree(n);
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    degree[v] = t.degree(v);
    if (degree[v] == 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int v : layer) {
      for (int w : t.neighbors(v)) {
        if (--degree[w] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  std::sort(layer.begin(), layer.end());
  return layer;
}

}  // namespace

std::string CanonicalCode::to_string() const {
  std::string out = "ls:";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(levels[i]);
  }
  return out;
}

CanonicalCode CanonicalCode::parse(std::string_view text) {
  if (text.substr(0, 3) == "ls:") text.remove_prefix(3);
  CanonicalCode code;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw TreeError("malformed level sequence item '" + std::string(item) + "'");
    }
    code.levels.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (code.levels.empty()) throw TreeError("empty level sequence");
  return code;
}

CanonicalCode canonical_code(const Tree& t) {
  CanonicalCode best;
  for (int c : centers(t)) {
    std::vector<int> code = rooted_code(t, c);
    if (code > best.levels) best.levels = std::move(code);
  }
  return best;
}

bool isomorphic(const Tree& a, const Tree& b) {
  return a.size() == b.size() && canonical_code(a) == canonical_code(b);
}

namespace {

// Component containing `start` after deleting the edge {start, blocked}.
Tree component_tree(const Tree& t, int start, int blocked) {
  std::vector<int> id(t.size(), -1);
  std::vector<int> order{start};
  id[start] = 0;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    for (int w : t.neighbors(v)) {
      if ((v == start && w == blocked) || id[w] != -1) continue;
      id[w] = static_cast<int>(order.size());
      order.push_back(w);
      edges.emplace_back(id[v], id[w]);
    }
  }
  return Tree::from_edges(static_cast<int>(order.size()), edges);
}

}  // namespace

int pendent_count(const Tree& t, const Tree& pattern) {
  const int n = t.size();
  const int m = pattern.size();
  if (m >= n) return 0;
  const CanonicalCode target = canonical_code(pattern);
  int count = 0;
  for (const auto& [u, v] : t.edges()) {
    // Size of v's side, found by a walk; trees here are small.
    const Tree side_v = component_tree(t, v, u);
    bool match = false;
    if (side_v.size() == m) match = canonical_code(side_v) == target;
    if (!match && n - side_v.size() == m) match = canonical_code(component_tree(t, u, v)) == target;
    if (match) ++count;
  }
  return count;
}

DegreeStats degree_stats(const Tree& t) {
  DegreeStats s;
  const int n = t.size();
  int branching = 0;
  for (int v = 0; v < n; ++v) {
    const int d = t.degree(v);
    s.max_degree = std::max(s.max_degree, d);
    if (d == 1) ++s.leaf_count;
    if (d >= 3) ++branching;
  }
  s.is_spider = branching == 1;
  s.is_path = s.max_degree <= 2;
  s.is_caterpillar = true;
  for (int v = 0; v < n && s.is_caterpillar; ++v) {
    if (t.degree(v) <= 1) continue;
    int inner = 0;
    for (int w : t.neighbors(v)) inner += t.degree(w) > 1 ? 1 : 0;
    s.is_caterpillar = inner <= 2;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Free tree generation: successor rule on rooted level sequences, with the
// jump that skips rooted trees which are not center-rooted free trees.

namespace {

// Next rooted level sequence after `layout` (Beyer-Hedetniemi); p is the
// position to increment from, or -1 for the last non-1 level.
bool next_rooted(std::vector<int>& layout, int p) {
  const int n = static_cast<int>(layout.size());
  if (p < 0) {
    p = n - 1;
    while (p > 0 && layout[p] == 1) --p;
  }
  if (p <= 0) return false;
  int q = p - 1;
  while (layout[q] != layout[p] - 1) --q;
  for (int i = p; i < n; ++i) layout[i] = layout[i - p + q];
  return true;
}

struct Split {
  int left_size = 0;    // vertices in the first subtree of the root
  int left_height = 0;  // its height, measured from the subtree root
  int rest_height = 0;  // height of the tree with that subtree removed
};

Split split(const std::vector<int>& layout) {
  const int n = static_cast<int>(layout.size());
  int m = n;
  for (int i = 2; i < n; ++i) {
    if (layout[i] == 1) {
      m = i;
      break;
    }
  }
  Split s;
  s.left_size = m - 1;
  for (int i = 1; i < m; ++i) s.left_height = std::max(s.left_height, layout[i] - 1);
  for (int i = m; i < n; ++i) s.rest_height = std::max(s.rest_height, layout[i]);
  return s;
}

// Left subtree (levels shifted down by one) against the rest (root plus the
// remaining subtrees), both as sequences.
bool left_after_rest(const std::vector<int>& layout, int left_size) {
  const int n = static_cast<int>(layout.size());
  std::vector<int> left, rest{0};
  for (int i = 1; i <= left_size; ++i) left.push_back(layout[i] - 1);
  for (int i = left_size + 1; i < n; ++i) rest.push_back(layout[i]);
  return left > rest;
}

// Returns layout if it is a valid center-rooted free tree, otherwise jumps
// to the next candidate that is.
void next_free(std::vector<int>& layout) {
  const Split s = split(layout);
  const int n = static_cast<int>(layout.size());
  const int rest_size = n - s.left_size;
  bool valid = s.rest_height >= s.left_height;
  if (valid && s.rest_height == s.left_height) {
    if (s.left_size > rest_size) {
      valid = false;
    } else if (s.left_size == rest_size && left_after_rest(layout, s.left_size)) {
      valid = false;
    }
  }
  if (valid) return;
  const int p = s.left_size;
  const bool tall = layout[p] > 2;
  next_rooted(layout, p);
  if (tall) {
    const int h = split(layout).left_height;
    for (int i = 0; i <= h; ++i) layout[n - 1 - h + i] = i + 1;
  }
}

}  // namespace

FreeTreeGenerator::FreeTreeGenerator(int n) : n_(n) {
  if (n < 1) throw TreeError("free tree generation needs n >= 1");
  if (n == 1) {
    layout_ = {0};
    return;
  }
  // Path rooted at its center.
  for (int i = 0; i <= n / 2; ++i) layout_.push_back(i);
  for (int i = 1; i < (n + 1) / 2; ++i) layout_.push_back(i);
}

bool FreeTreeGenerator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    if (n_ > 1) next_free(layout_);
    return true;
  }
  if (n_ <= 2 || !next_rooted(layout_, -1)) {
    done_ = true;
    return false;
  }
  next_free(layout_);
  ++index_;
  return true;
}

bool FreeTreeGenerator::skip_to(std::uint64_t target) {
  if (!started_ && !next()) return false;
  while (index_ < target) {
    if (!next()) return false;
  }
  return true;
}

std::vector<Tree> enumerate_free_trees(int n) {
  std::vector<Tree> out;
  FreeTreeGenerator gen(n);
  while (gen.next()) out.push_back(gen.tree());
  return out;
}

// ---------------------------------------------------------------------------
// Textual forms

namespace {

std::vector<int> parse_int_list(std::string_view text, std::string_view spec) {
  std::vector<int> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw TreeError("malformed tree spec '" + std::string(spec) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw TreeError("malformed tree spec '" + std::string(spec) + "'");
  return out;
}

int parse_single(std::string_view text, std::string_view spec) {
  const auto values = parse_int_list(text, spec);
  if (values.size() != 1) throw TreeError("malformed tree spec '" + std::string(spec) + "'");
  return values[0];
}

}  // namespace

Tree parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Edge> edges;
  int max_vertex = 0;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    int u, v;
    if (!(fields >> u)) continue;
    std::string extra;
    if (!(fields >> v) || (fields >> extra)) {
      throw TreeError("edge list line " + std::to_string(line_no) + ": expected \"u v\"");
    }
    edges.emplace_back(u, v);
    max_vertex = std::max({max_vertex, u, v});
  }
  return Tree::from_edges(max_vertex + 1, edges);
}

std::string format_edge_list(const Tree& t) {
  std::string out;
  for (const auto& [u, v] : t.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

Tree parse_tree_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon != std::string_view::npos) {
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view body = spec.substr(colon + 1);
    if (kind == "path") return make_path(parse_single(body, spec));
    if (kind == "star") return make_star(parse_single(body, spec));
    if (kind == "spider") return make_spider(parse_int_list(body, spec));
    if (kind == "caterpillar") return make_caterpillar(parse_int_list(body, spec));
    if (kind == "fixture") return fixture_tree(body);
    if (kind == "ls") return Tree::from_level_sequence(CanonicalCode::parse(body).levels);
    if (kind == "edges") {
      std::string text(body);
      std::replace(text.begin(), text.end(), ',', '\n');
      std::replace(text.begin(), text.end(), '-', ' ');
      return parse_edge_list(text);
    }
  }
  std::ifstream file{std::string(spec)};
  if (!file) throw TreeError("unknown tree spec or unreadable file '" + std::string(spec) + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_edge_list(buffer.str());
}

}  // namespace csft
