#include "openrewrite/canonical.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <utility>

namespace openrewrite {

namespace {

using Adjacency = std::vector<std::vector<std::pair<int, int>>>;  // (arc colour, neighbour)

void append_token(std::string& out, const std::string& s) {
  out += std::to_string(s.size());
  out += ':';
  out += s;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const ColoredDigraph& g) : n_(g.vertex_colors.size()) {
    vertex_palette_ = g.vertex_colors;
    std::sort(vertex_palette_.begin(), vertex_palette_.end());
    vertex_palette_.erase(std::unique(vertex_palette_.begin(), vertex_palette_.end()),
                          vertex_palette_.end());
    for (const auto& a : g.arcs) arc_palette_.push_back(a.color);
    std::sort(arc_palette_.begin(), arc_palette_.end());
    arc_palette_.erase(std::unique(arc_palette_.begin(), arc_palette_.end()), arc_palette_.end());

    color_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v)
      color_[v] = palette_index(vertex_palette_, g.vertex_colors[v]);
    out_.assign(n_, {});
    in_.assign(n_, {});
    for (const auto& a : g.arcs) {
      if (a.from >= n_ || a.to >= n_) throw DomainError("coloured digraph arc out of range");
      int c = palette_index(arc_palette_, a.color);
      arcs_.push_back({static_cast<int>(a.from), static_cast<int>(a.to), c});
      out_[a.from].emplace_back(c, static_cast<int>(a.to));
      in_[a.to].emplace_back(c, static_cast<int>(a.from));
    }
    for (auto& l : out_) std::sort(l.begin(), l.end());
    for (auto& l : in_) std::sort(l.begin(), l.end());
  }

  std::string run() {
    std::vector<int> ranks(color_.begin(), color_.end());
    search(std::move(ranks));
    std::string cert;
    append_token(cert, std::to_string(n_));
    for (const auto& c : vertex_palette_) append_token(cert, c);
    cert += '|';
    for (const auto& c : arc_palette_) append_token(cert, c);
    cert += '|';
    if (best_) cert += *best_;
    return cert;
  }

 private:
  struct IndexedArc {
    int from;
    int to;
    int color;
  };

  static int palette_index(const std::vector<std::string>& palette, const std::string& c) {
    return static_cast<int>(std::lower_bound(palette.begin(), palette.end(), c) - palette.begin());
  }

  static int dense_rerank(std::vector<int>& ranks, const std::vector<std::vector<int>>& keys) {
    std::vector<int> order(ranks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[a] < keys[b]; });
    int next = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i == 0 || keys[order[i]] != keys[order[i - 1]]) ++next;
      ranks[order[i]] = next;
    }
    return next + 1;
  }

  int refine(std::vector<int>& ranks) const {
    std::vector<std::vector<int>> keys(n_);
    for (std::size_t v = 0; v < n_; ++v) keys[v] = {ranks[v]};
    int cells = dense_rerank(ranks, keys);
    while (true) {
      for (std::size_t v = 0; v < n_; ++v) {
        std::vector<int>& k = keys[v];
        k.clear();
        k.push_back(ranks[v]);
        std::vector<std::pair<int, int>> nb;
        for (auto [c, w] : out_[v]) nb.emplace_back(c, ranks[w]);
        std::sort(nb.begin(), nb.end());
        k.push_back(static_cast<int>(nb.size()));
        for (auto [c, r] : nb) {
          k.push_back(c);
          k.push_back(r);
        }
        nb.clear();
        for (auto [c, w] : in_[v]) nb.emplace_back(c, ranks[w]);
        std::sort(nb.begin(), nb.end());
        k.push_back(static_cast<int>(nb.size()));
        for (auto [c, r] : nb) {
          k.push_back(c);
          k.push_back(r);
        }
      }
      int next = dense_rerank(ranks, keys);
      if (next == cells) return cells;
      cells = next;
    }
  }

  // The transposition (u v) preserves every arc.
  bool twins(int u, int v) const {
    auto swap_image = [&](const std::vector<std::pair<int, int>>& list) {
      std::vector<std::pair<int, int>> img;
      img.reserve(list.size());
      for (auto [c, w] : list) img.emplace_back(c, w == u ? v : (w == v ? u : w));
      std::sort(img.begin(), img.end());
      return img;
    };
    return color_[u] == color_[v] && swap_image(out_[u]) == out_[v] && swap_image(in_[u]) == in_[v];
  }

  void leaf(const std::vector<int>& pos) {
    std::vector<std::array<int, 3>> arcs;
    arcs.reserve(arcs_.size());
    for (const auto& a : arcs_) arcs.push_back({pos[a.from], pos[a.to], a.color});
    std::sort(arcs.begin(), arcs.end());
    std::vector<int> colors(n_);
    for (std::size_t v = 0; v < n_; ++v) colors[pos[v]] = color_[v];
    std::string s;
    for (int c : colors) {
      s += std::to_string(c);
      s += ',';
    }
    s += ';';
    for (const auto& a : arcs) {
      s += std::to_string(a[0]);
      s += '>';
      s += std::to_string(a[1]);
      s += '/';
      s += std::to_string(a[2]);
      s += ',';
    }
    if (!best_ || s < *best_) best_ = std::move(s);
  }

  void search(std::vector<int> ranks) {
    int cells = refine(ranks);
    if (static_cast<std::size_t>(cells) == n_) {
      leaf(ranks);
      return;
    }
    std::vector<int> size(cells, 0);
    for (int r : ranks) ++size[r];
    int target = 0;
    while (size[target] < 2) ++target;
    std::vector<int> tried;
    for (std::size_t v = 0; v < n_; ++v) {
      if (ranks[v] != target) continue;
      const int vi = static_cast<int>(v);
      if (std::any_of(tried.begin(), tried.end(), [&](int t) { return twins(t, vi); })) continue;
      tried.push_back(vi);
      std::vector<int> next(n_);
      for (std::size_t w = 0; w < n_; ++w)
        next[w] = 2 * ranks[w] + ((ranks[w] == target && w != v) ? 1 : 0);
      search(std::move(next));
    }
  }

  std::size_t n_;
  std::vector<std::string> vertex_palette_;
  std::vector<std::string> arc_palette_;
  std::vector<int> color_;
  Adjacency out_;
  Adjacency in_;
  std::vector<IndexedArc> arcs_;
  std::optional<std::string> best_;
};

}  // namespace

std::string canonical_certificate(const ColoredDigraph& g) { return Canonicalizer(g).run(); }

std::string canonical_form(const Graph& g) {
  if (!g.well_formed()) throw DomainError("canonical_form: graph is not well formed");
  ColoredDigraph d;
  for (const Node& n : g.nodes()) d.add_vertex("n:" + n.type);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    d.add_arc(g.src(e), g.tgt(e), "e:" + g.edges()[e].type);
  std::string prefix = g.typed() ? "typed:" + *g.type_graph() + "|" : "graph|";
  return prefix + canonical_certificate(d);
}

}  // namespace openrewrite
