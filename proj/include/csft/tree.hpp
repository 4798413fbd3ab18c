#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace csft {

class TreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Edge = std::pair<int, int>;

/// A finite tree on vertices 0..n-1, immutable after construction.
/// Adjacency is stored in compressed rows with each neighbor list sorted.
class Tree {
 public:
  /// Validates that `edges` form a tree on 0..n-1; throws TreeError naming
  /// the defect (out of range, self-loop, duplicate, cycle, disconnected).
  static Tree from_edges(int n, std::span<const Edge> edges);
  /// Vertex i is a child of the last earlier vertex one level above it.
  /// Throws TreeError unless levels[0] == 0 and each later level lies in
  /// 1..previous+1.
  static Tree from_level_sequence(std::span<const int> levels);

  int size() const { return n_; }
  std::span<const int> neighbors(int v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }
  /// Edges (u, v) with u < v in increasing order.
  std::vector<Edge> edges() const;
  /// The same tree with vertex v renamed to perm[v].
  Tree relabeled(std::span<const int> perm) const;

 private:
  Tree() = default;
  int n_ = 0;
  std::vector<int> offsets_;
  std::vector<int> targets_;
};

Tree make_path(int n);
/// K_{1,k}: a center joined to k leaves.
Tree make_star(int k);
/// Center joined to legs that are paths of the given lengths. Fewer than
/// three legs yields a path, which degree_stats reports as non-spider.
Tree make_spider(std::span<const int> legs);
/// Spine v_1..v_d with alpha_i leaves on v_i; alpha_1 and alpha_d must be
/// positive so that deleting the leaves leaves exactly the spine.
Tree make_caterpillar(std::span<const int> alpha);

/// Canonical level sequence rooted at a center; for two centers the
/// lexicographically larger of the two rooted codes. Equal iff isomorphic.
struct CanonicalCode {
  std::vector<int> levels;

  std::string to_string() const;
  static CanonicalCode parse(std::string_view text);
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

CanonicalCode canonical_code(const Tree& t);
bool isomorphic(const Tree& a, const Tree& b);

/// Number of edges f such that a component of t - f is isomorphic to
/// `pattern`. Each edge counts once even if both sides match.
int pendent_count(const Tree& t, const Tree& pattern);

struct DegreeStats {
  int max_degree = 0;
  int leaf_count = 0;
  bool is_spider = false;
  bool is_caterpillar = false;
  bool is_path = false;
};

DegreeStats degree_stats(const Tree& t);

/// Streams one tree per isomorphism class on n vertices as level sequences,
/// in a fixed deterministic order (successor generation of canonical free
/// tree level sequences rooted at the center).
class FreeTreeGenerator {
 public:
  explicit FreeTreeGenerator(int n);

  /// Advances to the next tree; false when exhausted.
  bool next();
  /// Skips forward until `index()` equals `target` or the stream ends.
  bool skip_to(std::uint64_t target);
  /// Zero-based generation index of the current tree.
  std::uint64_t index() const { return index_; }
  std::span<const int> levels() const { return layout_; }
  Tree tree() const { return Tree::from_level_sequence(layout_); }

 private:
  int n_;
  bool started_ = false;
  bool done_ = false;
  std::uint64_t index_ = 0;
  std::vector<int> layout_;
};

/// All free trees on n vertices, materialized.
std::vector<Tree> enumerate_free_trees(int n);

/// Parses "path:n", "star:k", "spider:a,b,...", "caterpillar:a,...",
/// "fixture:T1".."fixture:T4", a canonical code "ls:0,1,...", "edges:0-1,1-2"
/// or otherwise a path to an edge-list file with one "u v" pair per line.
Tree parse_tree_spec(std::string_view spec);
/// Edge-list text: one "u v" pair per line, '#' comments, 0-indexed.
Tree parse_edge_list(std::string_view text);
std::string format_edge_list(const Tree& t);

/// The four non-spider CPET trees with maximum degree 4 on at most 21 vertices.
Tree fixture_tree(std::string_view name);
std::vector<std::string> fixture_names();

}  // namespace csft
