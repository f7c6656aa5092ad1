#pragma once

#include "strength/exactnum.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace strength {

enum class Family { TSP, STGP, STHGP };

std::string to_string(Family f);
Family parse_family(const std::string& text);

// Thrown when a request would exceed the enumeration budget.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest n enumerated without an explicit override.
int enumeration_limit(Family f);
void check_enumeration_guard(Family f, int n, bool override_guard);

// Canonical edge order: vertex pairs lexicographically for graphs, vertex
// bitmask order (popcount >= 2) for hypergraphs. Vertices are 0-based here and
// printed 1-based.
class EdgeIndexer {
 public:
  EdgeIndexer(Family f, int n);

  Family family() const { return family_; }
  int n() const { return n_; }
  int m() const { return static_cast<int>(masks_.size()); }
  std::uint32_t mask(int index) const { return masks_[index]; }
  int size_of(int index) const;
  int index_of(std::uint32_t mask) const;  // -1 if not an edge
  std::string label(int index) const;

 private:
  Family family_;
  int n_;
  std::vector<std::uint32_t> masks_;
  std::vector<int> index_;
};

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Hyperplane {
  std::vector<Rational> a;
  Rational b;
  Sense sense = Sense::Equal;

  Rational eval(std::span<const std::uint16_t> edges) const;
  bool satisfied(std::span<const std::uint16_t> edges) const;
};

// Checked constructor: throws std::invalid_argument when every coefficient is
// zero (a void constraint, not a hyperplane).
Hyperplane make_hyperplane(std::vector<Rational> a, Rational b, Sense sense);

enum class FacetKind { NonNegativity, Subtour, Comb3 };

std::string to_string(FacetKind k);
FacetKind parse_facet_kind(const std::string& text);

// Vertex classes of a 3-toothed comb. Vertices are laid out in the order
// B1,T1,B2,T2,B3,T3,H,O.
struct CombConfig {
  std::array<int, 3> b{1, 1, 1};
  std::array<int, 3> t{1, 1, 1};
  int h = 0;
  int o = 0;

  int n() const { return b[0] + b[1] + b[2] + t[0] + t[1] + t[2] + h + o; }
  bool valid() const;
  std::string str() const;
};

// All comb configurations on n vertices, in lexicographic order of
// (b1,t1,b2,t2,b3,t3,h).
std::vector<CombConfig> comb_configs(int n);

struct FacetSpec {
  Family family = Family::STHGP;
  int n = 0;
  FacetKind kind = FacetKind::Subtour;
  int k = 0;
  CombConfig comb{};
};

void validate(const FacetSpec& spec);

Hyperplane build_facet(const EdgeIndexer& idx, const FacetSpec& spec);
// Subtour inequality on an arbitrary vertex set.
Hyperplane build_subtour(const EdgeIndexer& idx, std::uint32_t vertex_set);
// Equations cutting out the affine hull of the polytope.
std::vector<Hyperplane> affine_hull_equations(const EdgeIndexer& idx);

using PointVisitor = std::function<void(std::span<const std::uint16_t> edges)>;

// Streams every extreme point as a sorted list of edge indices. Returns the count.
std::uint64_t enumerate_points(const EdgeIndexer& idx, const PointVisitor& visit);

// Extreme points held in compressed rows of edge indices.
class ExtremePointSet {
 public:
  explicit ExtremePointSet(EdgeIndexer idx) : idx_(std::move(idx)), offsets_{0} {}

  const EdgeIndexer& indexer() const { return idx_; }
  std::size_t size() const { return offsets_.size() - 1; }
  std::span<const std::uint16_t> point(std::size_t i) const {
    return {edges_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  void add(std::span<const std::uint16_t> edges);
  std::vector<std::uint8_t> bitset(std::size_t i) const;

 private:
  EdgeIndexer idx_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint16_t> edges_;
};

ExtremePointSet enumerate(Family f, int n, bool override_guard = false);

std::uint64_t count_incident(const ExtremePointSet& points, const Hyperplane& h);
ExtremePointSet incident_points(const ExtremePointSet& points, const Hyperplane& h);
// Exact average of the points; throws on an empty set.
ExactVector centroid(const ExtremePointSet& points);

// Binary dump: magic "XPTS", u8 family tag, 3 pad bytes, u32 n, u32 m,
// u64 count, then ceil(m/8) bytes per point, bit e of a row in byte e/8
// at position e%8. All integers little-endian.
class PointWriter {
 public:
  enum class Format { Binary, Text };
  PointWriter(std::ostream& out, const EdgeIndexer& idx, Format format);
  void write(std::span<const std::uint16_t> edges);
  // Patches the count into the binary header; needs a seekable stream.
  void finish();
  std::uint64_t count() const { return count_; }

 private:
  std::ostream& out_;
  const EdgeIndexer& idx_;
  Format format_;
  std::uint64_t count_ = 0;
  std::streamoff count_pos_ = 0;
};

ExtremePointSet read_points_binary(std::istream& in);

}  // namespace strength
