#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stackup/instance.hpp"

namespace stackup {

using VertexId = std::uint32_t;
using Arc = std::pair<VertexId, VertexId>;

/// Loop-free digraph on labelled vertices. Arcs keep their insertion order
/// (the sequence system emits one sequence per arc in that order).
class SequenceDigraph {
 public:
  SequenceDigraph() = default;
  explicit SequenceDigraph(std::vector<std::string> labels);

  VertexId add_vertex(std::string label);
  /// Adds (u, v) unless already present; returns whether it was new. Throws on u == v.
  bool add_arc(VertexId u, VertexId v);

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  const std::string& label(VertexId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t find(std::string_view label) const;  // vertex_count() if absent

  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  std::vector<Arc> sorted_arcs() const;
  bool has_arc(VertexId u, VertexId v) const;
  const std::vector<VertexId>& in_neighbours(VertexId v) const { return in_[v]; }
  const std::vector<VertexId>& out_neighbours(VertexId v) const { return out_[v]; }
  bool is_isolated(VertexId v) const { return in_[v].empty() && out_[v].empty(); }

  /// Same labelled arc set; vertices compared by label, isolated ones ignored
  /// when `ignore_isolated` is set.
  bool same_as(const SequenceDigraph& other, bool ignore_isolated) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<VertexId>> out_;
  std::vector<std::vector<VertexId>> in_;
};

/// Vertex ordering with its directed vertex separation width.
struct Layout {
  std::vector<VertexId> order;
  int width = 0;
};

/// Single pass per sequence: when the last bin of pallet v is reached, every
/// pallet first seen earlier in that sequence gets an arc to v.
SequenceDigraph build_sequence_graph(const Instance& inst);

/// One two-bin sequence [u, v] per arc, in arc order. Isolated vertices are dropped.
Instance build_sequence_system(const SequenceDigraph& g);

/// Whether build_sequence_graph(build_sequence_system(g)) equals g up to isolated vertices.
bool roundtrip_check(const SequenceDigraph& g);

/// max over prefixes of |{u in prefix : some arc (v, u) with v outside the prefix}|.
int layout_width(const SequenceDigraph& g, const std::vector<VertexId>& order);

inline constexpr std::size_t kMaxSeparationVertices = 24;

/// Exact directed vertex separation number by dynamic programming over vertex
/// subsets. Returns the lexicographically smallest optimal ordering.
Layout directed_vertex_separation(const SequenceDigraph& g);

/// Minimum number of stack-up places as separation width + 1 (0 for m == 0).
int optimum_places_via_dpw(const Instance& inst);

/// `digraph` header, then one `u v` arc (or lone `u` vertex) per line.
SequenceDigraph parse_digraph(std::string_view text);
std::string emit_digraph(const SequenceDigraph& g);

}  // namespace stackup
