#include "strength/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <ostream>

namespace strength {

std::string to_string(Family f) {
  switch (f) {
    case Family::TSP: return "tsp";
    case Family::STGP: return "stgp";
    case Family::STHGP: return "sthgp";
  }
  return "?";
}

Family parse_family(const std::string& text) {
  if (text == "tsp") return Family::TSP;
  if (text == "stgp") return Family::STGP;
  if (text == "sthgp") return Family::STHGP;
  throw std::invalid_argument("unknown family: " + text);
}

std::string to_string(FacetKind k) {
  switch (k) {
    case FacetKind::NonNegativity: return "nonneg";
    case FacetKind::Subtour: return "subtour";
    case FacetKind::Comb3: return "comb";
  }
  return "?";
}

FacetKind parse_facet_kind(const std::string& text) {
  if (text == "nonneg") return FacetKind::NonNegativity;
  if (text == "subtour") return FacetKind::Subtour;
  if (text == "comb") return FacetKind::Comb3;
  throw std::invalid_argument("unknown facet: " + text);
}

int enumeration_limit(Family f) { return f == Family::TSP ? 12 : 9; }

void check_enumeration_guard(Family f, int n, bool override_guard) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n > 16) throw std::invalid_argument("enumeration supports n <= 16 only");
  if (!override_guard && n > enumeration_limit(f))
    throw ResourceGuardError("refusing to enumerate " + to_string(f) + " with n=" + std::to_string(n) +
                             " (limit " + std::to_string(enumeration_limit(f)) + "); pass the override flag");
}

EdgeIndexer::EdgeIndexer(Family f, int n) : family_(f), n_(n) {
  if (n < 1 || n > 20) throw std::invalid_argument("EdgeIndexer supports 1 <= n <= 20");
  index_.assign(std::size_t{1} << n, -1);
  if (f == Family::STHGP) {
    for (std::uint32_t s = 0; s < (1u << n); ++s)
      if (std::popcount(s) >= 2) {
        index_[s] = static_cast<int>(masks_.size());
        masks_.push_back(s);
      }
  } else {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        std::uint32_t s = (1u << u) | (1u << v);
        index_[s] = static_cast<int>(masks_.size());
        masks_.push_back(s);
      }
  }
  if (masks_.size() > 65535) throw std::invalid_argument("too many edges for 16-bit indices");
}

int EdgeIndexer::size_of(int index) const { return std::popcount(masks_[index]); }

int EdgeIndexer::index_of(std::uint32_t mask) const {
  if (mask >= index_.size()) return -1;
  return index_[mask];
}

std::string EdgeIndexer::label(int index) const {
  std::string out;
  std::uint32_t s = masks_[index];
  for (int v = 0; v < n_; ++v)
    if (s >> v & 1u) {
      if (n_ >= 10 && !out.empty()) out += ',';
      out += std::to_string(v + 1);
    }
  return out;
}

Rational Hyperplane::eval(std::span<const std::uint16_t> edges) const {
  Rational total;
  for (auto e : edges) total += a[e];
  return total;
}

bool Hyperplane::satisfied(std::span<const std::uint16_t> edges) const {
  Rational v = eval(edges);
  switch (sense) {
    case Sense::LessEqual: return v <= b;
    case Sense::GreaterEqual: return v >= b;
    case Sense::Equal: return v == b;
  }
  return false;
}

bool CombConfig::valid() const {
  for (int i = 0; i < 3; ++i)
    if (b[i] < 1 || t[i] < 1) return false;
  return h >= 0 && o >= 0;
}

std::string CombConfig::str() const {
  return std::to_string(b[0]) + "," + std::to_string(t[0]) + "," + std::to_string(b[1]) + "," +
         std::to_string(t[1]) + "," + std::to_string(b[2]) + "," + std::to_string(t[2]) + "," +
         std::to_string(h) + "," + std::to_string(o);
}

std::vector<CombConfig> comb_configs(int n) {
  std::vector<CombConfig> out;
  CombConfig c;
  std::array<int, 7> parts{};
  // parts = b1,t1,b2,t2,b3,t3,h; o takes the remainder.
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == 7) {
      c.b = {parts[0], parts[2], parts[4]};
      c.t = {parts[1], parts[3], parts[5]};
      c.h = parts[6];
      c.o = left;
      out.push_back(c);
      return;
    }
    int lo = pos < 6 ? 1 : 0;
    int reserve = std::max(0, 5 - pos);  // later parts that need at least one vertex
    for (int v = lo; v <= left - reserve; ++v) {
      parts[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  if (n >= 6) rec(rec, 0, n);
  return out;
}

void validate(const FacetSpec& spec) {
  const int n = spec.n;
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (n < 1) fail("n must be positive");
  switch (spec.kind) {
    case FacetKind::NonNegativity:
      if (spec.family == Family::STHGP) {
        if (spec.k < 2 || spec.k > n) fail("non-negativity edge size must satisfy 2 <= k <= n");
      } else if (spec.family == Family::TSP) {
        if (n < 3) fail("tsp non-negativity needs n >= 3");
      } else {
        fail("stgp non-negativity is not supported");
      }
      break;
    case FacetKind::Subtour:
      if (spec.family == Family::TSP) {
        if (spec.k < 2 || spec.k > n - 2) fail("tsp subtour needs 2 <= k <= n-2");
      } else if (spec.k < 2 || spec.k > n - 1) {
        fail("subtour needs 2 <= k <= n-1");
      }
      break;
    case FacetKind::Comb3:
      if (spec.family != Family::TSP) fail("combs exist only for tsp");
      if (!spec.comb.valid()) fail("comb classes need b_i, t_i >= 1 and h, o >= 0");
      if (spec.comb.n() != n) fail("comb class sizes must sum to n");
      break;
  }
}

Hyperplane make_hyperplane(std::vector<Rational> a, Rational b, Sense sense) {
  if (std::all_of(a.begin(), a.end(), [](const Rational& v) { return v.is_zero(); }))
    throw std::invalid_argument("hyperplane normal is zero");
  Hyperplane h;
  h.a = std::move(a);
  h.b = std::move(b);
  h.sense = sense;
  return h;
}

Hyperplane build_subtour(const EdgeIndexer& idx, std::uint32_t vertex_set) {
  Hyperplane h;
  const int m = idx.m();
  const int k = std::popcount(vertex_set);
  h.a.assign(m, Rational(0));
  switch (idx.family()) {
    case Family::TSP:
      for (int e = 0; e < m; ++e)
        if (std::popcount(idx.mask(e) & vertex_set) == 1) h.a[e] = 1;
      h.b = 2;
      h.sense = Sense::GreaterEqual;
      break;
    case Family::STGP:
      for (int e = 0; e < m; ++e)
        if ((idx.mask(e) & ~vertex_set) == 0) h.a[e] = 1;
      h.b = k - 1;
      h.sense = Sense::LessEqual;
      break;
    case Family::STHGP:
      for (int e = 0; e < m; ++e) h.a[e] = std::max(std::popcount(idx.mask(e) & vertex_set) - 1, 0);
      h.b = k - 1;
      h.sense = Sense::LessEqual;
      break;
  }
  return make_hyperplane(std::move(h.a), h.b, h.sense);
}

Hyperplane build_facet(const EdgeIndexer& idx, const FacetSpec& spec) {
  validate(spec);
  if (spec.family != idx.family() || spec.n != idx.n())
    throw std::invalid_argument("facet does not match the edge indexer");
  const int m = idx.m();
  Hyperplane h;
  switch (spec.kind) {
    case FacetKind::NonNegativity: {
      h.a.assign(m, Rational(0));
      std::uint32_t edge = spec.family == Family::STHGP ? (1u << spec.k) - 1 : 3u;
      h.a[idx.index_of(edge)] = 1;
      return make_hyperplane(std::move(h.a), 0, Sense::GreaterEqual);
    }
    case FacetKind::Subtour:
      return build_subtour(idx, (1u << spec.k) - 1);
    case FacetKind::Comb3: {
      const auto& c = spec.comb;
      std::uint32_t handle = 0;
      std::array<std::uint32_t, 3> teeth{};
      int v = 0;
      auto take = [&v](int count) {
        std::uint32_t s = 0;
        for (int i = 0; i < count; ++i) s |= 1u << v++;
        return s;
      };
      for (int i = 0; i < 3; ++i) {
        std::uint32_t bi = take(c.b[i]);
        std::uint32_t ti = take(c.t[i]);
        handle |= bi;
        teeth[i] = bi | ti;
      }
      handle |= take(c.h);
      h.a.assign(m, Rational(0));
      for (int e = 0; e < m; ++e) {
        std::uint32_t s = idx.mask(e);
        int coef = (s & ~handle) == 0 ? 1 : 0;
        for (auto t : teeth) coef += (s & ~t) == 0 ? 1 : 0;
        h.a[e] = coef;
      }
      int rhs = std::popcount(handle) - 5;
      for (auto t : teeth) rhs += std::popcount(t);
      return make_hyperplane(std::move(h.a), rhs, Sense::LessEqual);
    }
  }
  throw std::logic_error("unreachable facet kind");
}

std::vector<Hyperplane> affine_hull_equations(const EdgeIndexer& idx) {
  std::vector<Hyperplane> out;
  const int m = idx.m();
  if (idx.family() == Family::TSP) {
    for (int v = 0; v < idx.n(); ++v) {
      Hyperplane h;
      h.a.assign(m, Rational(0));
      for (int e = 0; e < m; ++e)
        if (idx.mask(e) >> v & 1u) h.a[e] = 1;
      h.b = 2;
      out.push_back(std::move(h));
    }
    return out;
  }
  Hyperplane h;
  h.a.resize(m);
  for (int e = 0; e < m; ++e) h.a[e] = idx.size_of(e) - 1;
  h.b = idx.n() - 1;
  out.push_back(std::move(h));
  return out;
}

namespace {

void enumerate_tours(const EdgeIndexer& idx, const PointVisitor& visit, std::uint64_t& count) {
  const int n = idx.n();
  if (n < 3) return;
  std::vector<int> path{0};
  std::vector<std::uint16_t> edges;
  std::vector<std::uint16_t> sorted;
  std::uint32_t used = 1;
  auto edge_of = [&](int u, int v) {
    return static_cast<std::uint16_t>(idx.index_of((1u << u) | (1u << v)));
  };
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(path.size()) == n) {
      if (path[1] > path.back()) return;
      sorted = edges;
      sorted.push_back(edge_of(path.back(), 0));
      std::sort(sorted.begin(), sorted.end());
      visit(sorted);
      ++count;
      return;
    }
    for (int v = 1; v < n; ++v) {
      if (used >> v & 1u) continue;
      used |= 1u << v;
      edges.push_back(edge_of(path.back(), v));
      path.push_back(v);
      self(self);
      path.pop_back();
      edges.pop_back();
      used &= ~(1u << v);
    }
  };
  rec(rec);
}

// Rooted decomposition: a task (v, W) grows the part of the tree hanging from
// v that covers W. The branch containing min(W) meets exactly one edge through
// v, and every vertex of the branch hangs from a unique vertex of that edge, so
// each tree is produced once.
class TreeGenerator {
 public:
  TreeGenerator(const EdgeIndexer& idx, int max_edge, const PointVisitor& visit)
      : idx_(idx), max_edge_(max_edge), visit_(visit) {}

  std::uint64_t run() {
    const int n = idx_.n();
    pending_.push_back({0, ((1u << n) - 1) & ~1u});
    expand();
    return count_;
  }

 private:
  struct Task {
    int root;
    std::uint32_t set;
  };

  void expand() {
    if (pending_.empty()) {
      sorted_ = edges_;
      std::sort(sorted_.begin(), sorted_.end());
      visit_(sorted_);
      ++count_;
      return;
    }
    Task t = pending_.back();
    pending_.pop_back();
    if (t.set == 0) {
      expand();
      pending_.push_back(t);
      return;
    }
    std::uint32_t lo = t.set & (~t.set + 1);
    std::uint32_t rest = t.set ^ lo;
    for (std::uint32_t r = rest;; r = (r - 1) & rest) {
      std::uint32_t block = lo | r;
      std::uint32_t remaining = t.set & ~block;
      for (std::uint32_t u = block; u != 0; u = (u - 1) & block) {
        if (std::popcount(u) + 1 > max_edge_) continue;
        edges_.push_back(static_cast<std::uint16_t>(idx_.index_of(u | (1u << t.root))));
        pending_.push_back({t.root, remaining});
        assign(u, block & ~u);
        pending_.pop_back();
        edges_.pop_back();
      }
      if (r == 0) break;
    }
    pending_.push_back(t);
  }

  void assign(std::uint32_t members, std::uint32_t left) {
    std::uint32_t u = members & (~members + 1);
    members ^= u;
    int uv = std::countr_zero(u);
    if (members == 0) {
      pending_.push_back({uv, left});
      expand();
      pending_.pop_back();
      return;
    }
    for (std::uint32_t a = left;; a = (a - 1) & left) {
      pending_.push_back({uv, a});
      assign(members, left & ~a);
      pending_.pop_back();
      if (a == 0) break;
    }
  }

  const EdgeIndexer& idx_;
  int max_edge_;
  const PointVisitor& visit_;
  std::vector<Task> pending_;
  std::vector<std::uint16_t> edges_;
  std::vector<std::uint16_t> sorted_;
  std::uint64_t count_ = 0;
};

}  // namespace

std::uint64_t enumerate_points(const EdgeIndexer& idx, const PointVisitor& visit) {
  std::uint64_t count = 0;
  switch (idx.family()) {
    case Family::TSP:
      enumerate_tours(idx, visit, count);
      return count;
    case Family::STGP:
      return TreeGenerator(idx, 2, visit).run();
    case Family::STHGP:
      return TreeGenerator(idx, idx.n(), visit).run();
  }
  return count;
}

void ExtremePointSet::add(std::span<const std::uint16_t> edges) {
  edges_.insert(edges_.end(), edges.begin(), edges.end());
  offsets_.push_back(edges_.size());
}

std::vector<std::uint8_t> ExtremePointSet::bitset(std::size_t i) const {
  std::vector<std::uint8_t> row(idx_.m(), 0);
  for (auto e : point(i)) row[e] = 1;
  return row;
}

ExtremePointSet enumerate(Family f, int n, bool override_guard) {
  check_enumeration_guard(f, n, override_guard);
  ExtremePointSet out{EdgeIndexer(f, n)};
  enumerate_points(out.indexer(), [&](std::span<const std::uint16_t> e) { out.add(e); });
  return out;
}

namespace {

// Integer image of a hyperplane: coefficients scaled by the lcm of denominators.
struct ScaledPlane {
  std::vector<long> a;
  long b = 0;
  bool ok = false;
};

ScaledPlane scale(const Hyperplane& h) {
  ScaledPlane s;
  BigInt l = h.b.den();
  for (const auto& c : h.a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
  BigInt limit = BigInt(1) << 40;
  s.a.reserve(h.a.size());
  for (const auto& c : h.a) {
    BigInt v = c.num() * (l / c.den());
    if (abs(v) > limit) return s;
    s.a.push_back(v.get_si());
  }
  BigInt bv = h.b.num() * (l / h.b.den());
  if (abs(bv) > limit) return s;
  s.b = bv.get_si();
  s.ok = true;
  return s;
}

template <typename F>
void for_each_incident(const ExtremePointSet& points, const Hyperplane& h, F&& f) {
  if (static_cast<int>(h.a.size()) != points.indexer().m())
    throw std::invalid_argument("hyperplane dimension mismatch");
  ScaledPlane s = scale(h);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto p = points.point(i);
    bool on;
    if (s.ok) {
      long v = 0;
      for (auto e : p) v += s.a[e];
      on = v == s.b;
    } else {
      on = h.eval(p) == h.b;
    }
    if (on) f(p);
  }
}

}  // namespace

std::uint64_t count_incident(const ExtremePointSet& points, const Hyperplane& h) {
  std::uint64_t c = 0;
  for_each_incident(points, h, [&](auto) { ++c; });
  return c;
}

ExtremePointSet incident_points(const ExtremePointSet& points, const Hyperplane& h) {
  ExtremePointSet out{points.indexer()};
  for_each_incident(points, h, [&](auto p) { out.add(p); });
  return out;
}

ExactVector centroid(const ExtremePointSet& points) {
  if (points.size() == 0) throw std::invalid_argument("centroid of an empty point set");
  std::vector<std::uint64_t> counts(points.indexer().m(), 0);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (auto e : points.point(i)) ++counts[e];
  ExactVector c(points.indexer().m());
  BigInt total = static_cast<unsigned long>(points.size());
  for (int e = 0; e < points.indexer().m(); ++e)
    c[e] = Rational(BigInt(static_cast<unsigned long>(counts[e])), total);
  return c;
}

namespace {

template <typename T>
void put_le(std::ostream& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.put(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(std::istream& in) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    int c = in.get();
    if (c == EOF) throw std::runtime_error("truncated point file");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return static_cast<T>(v);
}

}  // namespace

PointWriter::PointWriter(std::ostream& out, const EdgeIndexer& idx, Format format)
    : out_(out), idx_(idx), format_(format) {
  if (format_ != Format::Binary) return;
  out_.write("XPTS", 4);
  out_.put(static_cast<char>(idx.family()));
  out_.put(0);
  out_.put(0);
  out_.put(0);
  put_le<std::uint32_t>(out_, static_cast<std::uint32_t>(idx.n()));
  put_le<std::uint32_t>(out_, static_cast<std::uint32_t>(idx.m()));
  count_pos_ = out_.tellp();
  put_le<std::uint64_t>(out_, 0);
}

void PointWriter::write(std::span<const std::uint16_t> edges) {
  ++count_;
  if (format_ == Format::Text) {
    std::string row(idx_.m(), '0');
    for (auto e : edges) row[e] = '1';
    row += '\n';
    out_.write(row.data(), static_cast<std::streamsize>(row.size()));
    return;
  }
  std::vector<char> row((idx_.m() + 7) / 8, 0);
  for (auto e : edges) row[e / 8] = static_cast<char>(row[e / 8] | (1 << (e % 8)));
  out_.write(row.data(), static_cast<std::streamsize>(row.size()));
}

void PointWriter::finish() {
  if (format_ == Format::Binary) {
    auto end = out_.tellp();
    out_.seekp(count_pos_);
    put_le<std::uint64_t>(out_, count_);
    out_.seekp(end);
  }
  out_.flush();
}

ExtremePointSet read_points_binary(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "XPTS") throw std::runtime_error("not a point file");
  int tag = in.get();
  in.ignore(3);
  if (tag < 0 || tag > 2) throw std::runtime_error("bad family tag");
  auto n = get_le<std::uint32_t>(in);
  auto m = get_le<std::uint32_t>(in);
  auto count = get_le<std::uint64_t>(in);
  ExtremePointSet out{EdgeIndexer(static_cast<Family>(tag), static_cast<int>(n))};
  if (static_cast<std::uint32_t>(out.indexer().m()) != m) throw std::runtime_error("edge count mismatch");
  std::vector<char> row((m + 7) / 8);
  std::vector<std::uint16_t> edges;
  for (std::uint64_t i = 0; i < count; ++i) {
    in.read(row.data(), static_cast<std::streamsize>(row.size()));
    if (!in) throw std::runtime_error("truncated point file");
    edges.clear();
    for (std::uint32_t e = 0; e < m; ++e)
      if (row[e / 8] >> (e % 8) & 1) edges.push_back(static_cast<std::uint16_t>(e));
    out.add(edges);
  }
  return out;
}

}  // namespace strength
