#include "tincalc/cliques.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "tincalc/errors.hpp"

namespace tincalc {

Segment make_segment(const Point& p, const Point& q) {
  if (p.x == q.x) throw VerticalEdge("vertical segment");
  return p.x < q.x ? Segment{p, q} : Segment{q, p};
}

std::size_t CliqueFamily::total_size() const {
  std::size_t s = 0;
  for (const auto& c : cliques) s += c.red.size() + c.blue.size();
  return s;
}

std::size_t CliqueFamily::pair_count() const {
  std::size_t s = 0;
  for (const auto& c : cliques) s += c.red.size() * c.blue.size();
  return s;
}

namespace {

struct Line {
  Scalar slope;
  Scalar intercept;

  Scalar at(const Scalar& x) const { return intercept + slope * x; }
};

Line line_of(const Segment& s) {
  Line l;
  l.slope = s.slope();
  l.intercept = s.a.y - l.slope * s.a.x;
  return l;
}

bool is_endpoint(const Segment& s, const Point& p) { return s.a == p || s.b == p; }

// One color's segments as seen from the slab structure.
struct Side {
  const std::vector<Segment>* segs;
  std::vector<Line> lines;
};

class CoverBuilder {
 public:
  CoverBuilder(const std::vector<Segment>& red, const std::vector<Segment>& blue) {
    red_.segs = &red;
    blue_.segs = &blue;
    for (const auto& s : red) red_.lines.push_back(line_of(s));
    for (const auto& s : blue) blue_.lines.push_back(line_of(s));
    std::vector<Scalar> xs;
    for (const auto* side : {&red, &blue})
      for (const auto& s : *side) {
        xs.push_back(s.a.x);
        xs.push_back(s.b.x);
      }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    xs_ = std::move(xs);
    if (xs_.size() >= 2) {
      const std::size_t slabs = xs_.size() - 1;
      nodes_.resize(4 * slabs);
      for (std::size_t i = 0; i < red.size(); ++i) insert(1, 0, slabs - 1, i, true);
      for (std::size_t i = 0; i < blue.size(); ++i) insert(1, 0, slabs - 1, i, false);
    }
  }

  CliqueFamily run() {
    CliqueFamily fam;
    if (xs_.size() >= 2) visit(1, 0, xs_.size() - 2, fam);
    return fam;
  }

 private:
  struct Node {
    std::vector<std::size_t> long_red, long_blue, short_red, short_blue;
  };

  std::size_t slab_index(const Scalar& x) const {
    return static_cast<std::size_t>(std::lower_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  }

  void insert(std::size_t node, std::size_t lo, std::size_t hi, std::size_t id, bool red) {
    const Segment& s = (red ? *red_.segs : *blue_.segs)[id];
    const std::size_t first = slab_index(s.a.x);
    const std::size_t last = slab_index(s.b.x) - 1;
    insert_range(node, lo, hi, first, last, id, red);
  }

  void insert_range(std::size_t node, std::size_t lo, std::size_t hi, std::size_t first, std::size_t last,
                    std::size_t id, bool red) {
    if (last < lo || hi < first) return;
    Node& n = nodes_[node];
    if (first <= lo && hi <= last) {
      (red ? n.long_red : n.long_blue).push_back(id);
      return;
    }
    (red ? n.short_red : n.short_blue).push_back(id);
    const std::size_t mid = (lo + hi) / 2;
    insert_range(2 * node, lo, mid, first, last, id, red);
    insert_range(2 * node + 1, mid + 1, hi, first, last, id, red);
  }

  void visit(std::size_t node, std::size_t lo, std::size_t hi, CliqueFamily& fam) {
    const Node& n = nodes_[node];
    const Scalar& x_lo = xs_[lo];
    const Scalar& x_hi = xs_[hi + 1];
    if (!n.long_red.empty()) {
      std::vector<std::size_t> pieces = n.long_blue;
      pieces.insert(pieces.end(), n.short_blue.begin(), n.short_blue.end());
      emit(red_, n.long_red, blue_, pieces, x_lo, x_hi, true, fam);
    }
    if (!n.long_blue.empty() && !n.short_red.empty())
      emit(blue_, n.long_blue, red_, n.short_red, x_lo, x_hi, false, fam);
    if (lo == hi) return;
    const std::size_t mid = (lo + hi) / 2;
    visit(2 * node, lo, mid, fam);
    visit(2 * node + 1, mid + 1, hi, fam);
  }

  // Number of stack segments below piece p at abscissa x. `at_start` selects
  // the tie convention for the left end of the piece.
  std::size_t count_below(const Side& stack_side, const std::vector<std::size_t>& stack, const Side& piece_side,
                          std::size_t p, const Scalar& x, bool at_start, const Scalar& x_hi) const {
    const Line& pl = piece_side.lines[p];
    const Scalar py = pl.at(x);
    const Point at{x, py};
    std::size_t lo = 0, hi = stack.size();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const std::size_t s = stack[mid];
      const Line& sl = stack_side.lines[s];
      const int c = sgn(sl.at(x) - py);
      bool below;
      if (c != 0) {
        below = c < 0;
      } else {
        const int ds = sgn(pl.slope - sl.slope);
        if (ds == 0) throw DegenerateInput("collinear red/blue overlap");
        const bool end_s = is_endpoint((*stack_side.segs)[s], at);
        const bool end_p = is_endpoint((*piece_side.segs)[p], at);
        if (end_s != end_p) throw DegenerateInput("segment endpoint lies on the other color's segment");
        if (!at_start && x < x_hi && !end_s) throw DegenerateInput("touching red/blue segments");
        // Shared endpoint: order just to the right at the left end, just to
        // the left at the right end. Crossing point: the order before it.
        if (at_start && end_s)
          below = ds > 0;
        else
          below = ds < 0;
      }
      if (below)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  void emit(const Side& stack_side, std::vector<std::size_t> stack, const Side& piece_side,
            const std::vector<std::size_t>& pieces, const Scalar& x_lo, const Scalar& x_hi, bool stack_is_red,
            CliqueFamily& fam) {
    if (stack.empty() || pieces.empty()) return;
    const Scalar mid = (x_lo + x_hi) / 2;
    std::sort(stack.begin(), stack.end(), [&](std::size_t a, std::size_t b) {
      return stack_side.lines[a].at(mid) < stack_side.lines[b].at(mid);
    });
    const std::size_t m = stack.size();
    // Canonical-node buckets of an implicit segment tree over stack positions,
    // one per orientation (piece slope above / below the stack slopes).
    std::map<std::size_t, std::array<std::vector<std::size_t>, 2>> buckets;
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> ranges;
    for (std::size_t p : pieces) {
      const Segment& s = (*piece_side.segs)[p];
      const Scalar xs = std::max(x_lo, s.a.x);
      const Scalar xe = std::min(x_hi, s.b.x);
      const std::size_t ps = count_below(stack_side, stack, piece_side, p, xs, true, x_hi);
      const std::size_t pe = count_below(stack_side, stack, piece_side, p, xe, false, x_hi);
      if (ps == pe) continue;
      const bool upward = pe > ps;
      decompose(1, 0, m, std::min(ps, pe), std::max(ps, pe), p, upward ? 1 : 0, buckets, ranges);
    }
    for (auto& [node, by_dir] : buckets) {
      const auto [lo, hi] = ranges[node];
      for (int dir = 0; dir < 2; ++dir) {
        auto& group = by_dir[static_cast<std::size_t>(dir)];
        if (group.empty()) continue;
        std::vector<std::size_t> stack_part(stack.begin() + static_cast<std::ptrdiff_t>(lo),
                                            stack.begin() + static_cast<std::ptrdiff_t>(hi));
        Clique c;
        // dir 1: the piece rises through the stack, so its slope is larger.
        const bool stack_lower = dir == 1;
        if (stack_is_red) {
          c.red = std::move(stack_part);
          c.blue = std::move(group);
          c.red_lower = stack_lower;
        } else {
          c.blue = std::move(stack_part);
          c.red = std::move(group);
          c.red_lower = !stack_lower;
        }
        fam.cliques.push_back(std::move(c));
      }
    }
  }

  static void decompose(std::size_t node, std::size_t lo, std::size_t hi, std::size_t a, std::size_t b,
                        std::size_t piece, int dir,
                        std::map<std::size_t, std::array<std::vector<std::size_t>, 2>>& buckets,
                        std::map<std::size_t, std::pair<std::size_t, std::size_t>>& ranges) {
    if (b <= lo || hi <= a) return;
    if (a <= lo && hi <= b) {
      buckets[node][static_cast<std::size_t>(dir)].push_back(piece);
      ranges[node] = {lo, hi};
      return;
    }
    const std::size_t mid = (lo + hi) / 2;
    decompose(2 * node, lo, mid, a, b, piece, dir, buckets, ranges);
    decompose(2 * node + 1, mid, hi, a, b, piece, dir, buckets, ranges);
  }

  Side red_, blue_;
  std::vector<Scalar> xs_;
  std::vector<Node> nodes_;
};

}  // namespace

CliqueFamily build_clique_cover(const std::vector<Segment>& red, const std::vector<Segment>& blue) {
  for (const auto* side : {&red, &blue})
    for (const auto& s : *side)
      if (!(s.a.x < s.b.x)) throw VerticalEdge("segment is vertical or not oriented left to right");
  return CoverBuilder(red, blue).run();
}

bool segments_cross(const Segment& r, const Segment& b) {
  const int o1 = sgn(orient(r.a, r.b, b.a));
  const int o2 = sgn(orient(r.a, r.b, b.b));
  const int o3 = sgn(orient(b.a, b.b, r.a));
  const int o4 = sgn(orient(b.a, b.b, r.b));
  return o1 * o2 < 0 && o3 * o4 < 0;
}

namespace {

struct Box {
  double xmin, xmax, ymin, ymax;
};

Box box_of(const Segment& s) {
  const double ax = s.a.x.get_d(), bx = s.b.x.get_d(), ay = s.a.y.get_d(), by = s.b.y.get_d();
  return {std::min(ax, bx), std::max(ax, bx), std::min(ay, by), std::max(ay, by)};
}

bool boxes_may_touch(const Box& p, const Box& q) {
  const double eps = 1e-9 * (1 + std::abs(p.xmax) + std::abs(q.xmax) + std::abs(p.ymax) + std::abs(q.ymax));
  return p.xmin <= q.xmax + eps && q.xmin <= p.xmax + eps && p.ymin <= q.ymax + eps && q.ymin <= p.ymax + eps;
}

}  // namespace

CoverCheck verify_clique_cover(const CliqueFamily& fam, const std::vector<Segment>& red,
                               const std::vector<Segment>& blue) {
  CoverCheck check;
  check.total_size = fam.total_size();
  auto note = [&](std::string msg) {
    if (check.problems.size() < 20) check.problems.push_back(std::move(msg));
  };
  std::map<std::pair<std::size_t, std::size_t>, int> seen;
  for (std::size_t k = 0; k < fam.cliques.size(); ++k) {
    const Clique& c = fam.cliques[k];
    Scalar red_max, blue_min, red_min, blue_max;
    for (std::size_t i = 0; i < c.red.size(); ++i) {
      const Scalar s = red.at(c.red[i]).slope();
      if (i == 0 || s > red_max) red_max = s;
      if (i == 0 || s < red_min) red_min = s;
    }
    for (std::size_t i = 0; i < c.blue.size(); ++i) {
      const Scalar s = blue.at(c.blue[i]).slope();
      if (i == 0 || s > blue_max) blue_max = s;
      if (i == 0 || s < blue_min) blue_min = s;
    }
    if (!c.red.empty() && !c.blue.empty()) {
      const bool separated = c.red_lower ? red_max < blue_min : blue_max < red_min;
      if (!separated) {
        check.slopes_separated = false;
        note("clique " + std::to_string(k) + " has interleaved slopes");
      }
    }
    for (std::size_t r : c.red)
      for (std::size_t b : c.blue) {
        if (!segments_cross(red[r], blue[b])) {
          check.all_cross = false;
          note("clique " + std::to_string(k) + " lists non-crossing pair (" + std::to_string(r) + ", " +
               std::to_string(b) + ")");
        }
        if (++seen[{r, b}] == 2) {
          check.exactly_once = false;
          note("pair (" + std::to_string(r) + ", " + std::to_string(b) + ") covered more than once");
        }
      }
  }
  std::vector<Box> rb, bb;
  for (const auto& s : red) rb.push_back(box_of(s));
  for (const auto& s : blue) bb.push_back(box_of(s));
  for (std::size_t r = 0; r < red.size(); ++r)
    for (std::size_t b = 0; b < blue.size(); ++b) {
      if (!boxes_may_touch(rb[r], bb[b])) continue;
      if (!segments_cross(red[r], blue[b])) continue;
      ++check.crossings;
      if (!seen.count({r, b})) {
        check.exactly_once = false;
        note("crossing pair (" + std::to_string(r) + ", " + std::to_string(b) + ") is not covered");
      }
    }
  return check;
}

CoverStats cover_stats(const CliqueFamily& fam, std::size_t segments) {
  CoverStats st;
  st.segments = segments;
  st.cliques = fam.cliques.size();
  st.total_size = fam.total_size();
  st.crossings = fam.pair_count();
  if (segments > 1) {
    const double lg = std::log2(static_cast<double>(segments));
    st.ratio = static_cast<double>(st.total_size) / (static_cast<double>(segments) * lg * lg);
  }
  return st;
}

std::vector<Segment> interior_segments(const Tin& t, const std::vector<EdgeData>& edges,
                                       std::vector<std::size_t>* edge_ids) {
  std::vector<Segment> out;
  if (edge_ids) edge_ids->clear();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].is_boundary) continue;
    out.push_back(make_segment(t.point(edges[i].endpoints[0]), t.point(edges[i].endpoints[1])));
    if (edge_ids) edge_ids->push_back(i);
  }
  return out;
}

}  // namespace tincalc
