#include "stackup/seqgraph.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <unordered_map>

#include "stackup/error.hpp"
#include "text_util.hpp"

namespace stackup {

SequenceDigraph::SequenceDigraph(std::vector<std::string> labels)
    : labels_(std::move(labels)), out_(labels_.size()), in_(labels_.size()) {}

VertexId SequenceDigraph::add_vertex(std::string label) {
  labels_.push_back(std::move(label));
  out_.emplace_back();
  in_.emplace_back();
  return static_cast<VertexId>(labels_.size() - 1);
}

bool SequenceDigraph::add_arc(VertexId u, VertexId v) {
  if (u >= vertex_count() || v >= vertex_count()) throw PreconditionError("arc endpoint out of range");
  if (u == v) throw PreconditionError("self-loop on vertex '" + labels_[u] + "'");
  auto& outs = out_[u];
  auto pos = std::lower_bound(outs.begin(), outs.end(), v);
  if (pos != outs.end() && *pos == v) return false;
  outs.insert(pos, v);
  auto& ins = in_[v];
  ins.insert(std::lower_bound(ins.begin(), ins.end(), u), u);
  arcs_.emplace_back(u, v);
  return true;
}

std::size_t SequenceDigraph::find(std::string_view label) const {
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == label) return v;
  }
  return labels_.size();
}

std::vector<Arc> SequenceDigraph::sorted_arcs() const {
  auto out = arcs_;
  std::sort(out.begin(), out.end());
  return out;
}

bool SequenceDigraph::has_arc(VertexId u, VertexId v) const {
  const auto& outs = out_.at(u);
  return std::binary_search(outs.begin(), outs.end(), v);
}

bool SequenceDigraph::same_as(const SequenceDigraph& other, bool ignore_isolated) const {
  auto vertex_set = [ignore_isolated](const SequenceDigraph& g) {
    std::set<std::string> s;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (!ignore_isolated || !g.is_isolated(v)) s.insert(g.label(v));
    }
    return s;
  };
  auto arc_set = [](const SequenceDigraph& g) {
    std::set<std::pair<std::string, std::string>> s;
    for (auto [u, v] : g.arcs()) s.emplace(g.label(u), g.label(v));
    return s;
  };
  return vertex_set(*this) == vertex_set(other) && arc_set(*this) == arc_set(other);
}

SequenceDigraph build_sequence_graph(const Instance& inst) {
  SequenceDigraph g(inst.tokens());
  const FirstLastTable tbl(inst);
  std::vector<PalletId> seen;
  for (std::size_t j = 0; j < inst.k(); ++j) {
    const auto& q = inst.sequence(j);
    seen.clear();
    for (std::size_t pos = 0; pos < q.size(); ++pos) {
      const PalletId t = q[pos];
      const auto here = static_cast<std::uint32_t>(pos + 1);
      if (here == tbl.last(j, t)) {
        for (PalletId u : seen) {
          if (u != t) g.add_arc(u, t);
        }
      }
      if (here == tbl.first(j, t)) seen.push_back(t);
    }
  }
  return g;
}

Instance build_sequence_system(const SequenceDigraph& g) {
  std::vector<std::vector<std::string>> sequences;
  sequences.reserve(g.arc_count());
  for (auto [u, v] : g.arcs()) {
    if (u == v) throw PreconditionError("sequence system of a digraph with a self-loop");
    sequences.push_back({g.label(u), g.label(v)});
  }
  return Instance::from_tokens(sequences);
}

bool roundtrip_check(const SequenceDigraph& g) {
  return build_sequence_graph(build_sequence_system(g)).same_as(g, true);
}

int layout_width(const SequenceDigraph& g, const std::vector<VertexId>& order) {
  const std::size_t nv = g.vertex_count();
  if (order.size() != nv) throw PreconditionError("layout is not a permutation of the vertices");
  std::vector<bool> placed(nv, false);
  int width = 0;
  for (VertexId next : order) {
    if (next >= nv || placed[next]) throw PreconditionError("layout is not a permutation of the vertices");
    placed[next] = true;
    int boundary = 0;
    for (VertexId u = 0; u < nv; ++u) {
      if (!placed[u]) continue;
      const auto& ins = g.in_neighbours(u);
      if (std::any_of(ins.begin(), ins.end(), [&](VertexId v) { return !placed[v]; })) ++boundary;
    }
    width = std::max(width, boundary);
  }
  return width;
}

Layout directed_vertex_separation(const SequenceDigraph& g) {
  const std::size_t nv = g.vertex_count();
  if (nv > kMaxSeparationVertices) {
    throw CapacityError("directed vertex separation supports at most " +
                        std::to_string(kMaxSeparationVertices) + " vertices, got " +
                        std::to_string(nv));
  }
  Layout layout;
  if (nv == 0) return layout;

  const std::uint32_t full = (nv == 32) ? ~0u : ((1u << nv) - 1);
  std::vector<std::uint32_t> in_mask(nv, 0);
  for (auto [u, v] : g.arcs()) in_mask[v] |= 1u << u;

  // boundary[S]: members of S with an in-arc from outside S.
  std::vector<std::uint8_t> boundary(std::size_t{full} + 1, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    int count = 0;
    for (std::uint32_t r = s; r; r &= r - 1) {
      if (in_mask[static_cast<std::size_t>(std::countr_zero(r))] & ~s & full) ++count;
    }
    boundary[s] = static_cast<std::uint8_t>(count);
  }

  // finish[S]: best achievable max boundary over the prefixes that extend S.
  std::vector<std::uint8_t> finish(std::size_t{full} + 1, 0);
  for (std::uint32_t s = full; s-- > 0;) {
    std::uint8_t best = 0xff;
    for (std::uint32_t free = ~s & full; free; free &= free - 1) {
      const std::uint32_t next = s | (free & (~free + 1));
      best = std::min(best, std::max(boundary[next], finish[next]));
    }
    finish[s] = best;
  }

  std::uint32_t s = 0;
  while (s != full) {
    for (std::uint32_t free = ~s & full; free; free &= free - 1) {
      const std::uint32_t bit = free & (~free + 1);
      const std::uint32_t next = s | bit;
      if (std::max(boundary[next], finish[next]) == finish[s]) {
        layout.order.push_back(static_cast<VertexId>(std::countr_zero(bit)));
        s = next;
        break;
      }
    }
  }
  layout.width = finish[0];
  return layout;
}

int optimum_places_via_dpw(const Instance& inst) {
  if (inst.m() == 0) return 0;
  return directed_vertex_separation(build_sequence_graph(inst)).width + 1;
}

SequenceDigraph parse_digraph(std::string_view text) {
  const auto lines = detail::split_lines(text);
  SequenceDigraph g;
  bool header = false;
  std::unordered_map<std::string, VertexId> ids;
  auto vertex = [&](const std::string& label) {
    auto it = ids.find(label);
    if (it != ids.end()) return it->second;
    const VertexId v = g.add_vertex(label);
    ids.emplace(label, v);
    return v;
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::is_comment(lines[i]) || detail::is_blank(lines[i])) continue;
    if (!header) {
      if (detail::trim(lines[i]) != "digraph") throw ParseError(i + 1, "expected 'digraph' header");
      header = true;
      continue;
    }
    const auto tokens = detail::split_ws(lines[i]);
    if (tokens.size() == 1) {
      vertex(tokens[0]);
    } else if (tokens.size() == 2) {
      if (tokens[0] == tokens[1]) throw ParseError(i + 1, "self-loop on '" + tokens[0] + "'");
      const VertexId u = vertex(tokens[0]);
      g.add_arc(u, vertex(tokens[1]));
    } else {
      throw ParseError(i + 1, "expected 'u v' arc line");
    }
  }
  if (!header) throw ParseError("missing 'digraph' header");
  return g;
}

std::string emit_digraph(const SequenceDigraph& g) {
  std::string out = "digraph\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.is_isolated(v)) out += g.label(v) + '\n';
  }
  for (auto [u, v] : g.arcs()) out += g.label(u) + ' ' + g.label(v) + '\n';
  return out;
}

}  // namespace stackup
