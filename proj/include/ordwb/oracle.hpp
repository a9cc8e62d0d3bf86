#pragma once

#include "ordwb/term.hpp"

#include "json.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace ordwb {

struct GridOps {
  bool succ = true;  // x+1
  bool twice = true; // x*2
  bool sum = true;   // x+y for members
  bool omega = true; // w^x
};

struct GridSpec {
  Term bound;
  std::vector<Term> seeds;
  int rounds = 1;      // closure rounds; a point's depth is the round it first appears in
  int param_depth = 0; // points of depth <= this may be held fixed by an embedding
  std::size_t cap = 400;
  // Below each epsilon e of the closure: a tower of principal points above
  // every smaller closure point, each carrying a copy of the offsets x with
  // e+x in the grid. These are the room an embedding of [e, e*2) needs. The
  // tower is as tall as the offset list plus `shadows`; 0 disables towers.
  int shadows = 1;
  GridOps ops;
};

// Finite, sorted set of concrete ordinals below `bound`, with the addition
// table restricted to the grid.
class Grid {
public:
  const GridSpec &spec() const { return spec_; }
  std::size_t size() const { return points_.size(); }
  const Term &operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Term> &points() const { return points_; }
  int depth(std::size_t i) const { return depth_[i]; }
  bool is_param(std::size_t i) const { return depth_[i] <= spec_.param_depth; }
  // For a non-principal point b+p (p its last principal summand) the grid
  // indices of b and p, else {-1,-1}. Both may always be held fixed, so the
  // decomposition is visible to every embedding.
  std::pair<int, int> split(std::size_t i) const { return split_[i]; }
  // index of a+b in the grid, -1 if absent
  int sum(int a, int b) const { return sums_[(std::size_t)a * points_.size() + b]; }
  std::optional<int> index_of(const Term &t) const;
  int require(const Term &t) const; // DomainError if t is not a grid point
  std::uint64_t hash() const;

  friend Grid build_grid(const GridSpec &spec);
  friend Grid grid_from_points(std::vector<Term> pts, std::vector<int> depth, GridSpec spec);

private:
  GridSpec spec_;
  std::vector<Term> points_;
  std::vector<int> depth_;
  std::vector<int> sums_;
  std::vector<std::pair<int, int>> split_;
  void index();
};

Grid build_grid(const GridSpec &spec);
// The calibrated grid below eps(3): seeds eps(i) and eps(i)*2+1 for i < 3.
GridSpec default_grid_spec();
// t = b + p with p the last principal summand; none for 0 and principal t
std::optional<std::pair<Term, Term>> split_last(const Term &t);
Grid grid_from_points(std::vector<Term> pts, std::vector<int> depth, GridSpec spec);

struct FixpointStats {
  int rounds = 0;
  std::vector<std::size_t> removed_per_round;
  double seconds = 0;
};

// Grid-relative <=_1. Rows are intervals: i <=_1 j iff i <= j <= mhat[i].
class Leq1Relation {
public:
  Leq1Relation(std::shared_ptr<const Grid> g, std::vector<int> mhat, int subset_cap,
               FixpointStats stats = {});
  const Grid &grid() const { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
  int subset_cap() const { return cap_; }
  const std::vector<int> &mhat() const { return mhat_; }
  const FixpointStats &stats() const { return stats_; }

  bool leq1(int i, int j) const { return i <= j && j <= mhat_[i]; }
  bool leq1(const Term &a, const Term &b) const;
  Term m_hat(const Term &t) const;
  std::size_t pair_count() const;

private:
  std::shared_ptr<const Grid> grid_;
  std::vector<int> mhat_;
  int cap_;
  FixpointStats stats_;
};

// Row update shared by both drivers: new m-hat of point `a` given the
// previous round's snapshot. `witness` receives the source set that failed.
int fixpoint_row(const Grid &g, const std::vector<int> &prev, int a, int subset_cap,
                 std::vector<int> *witness = nullptr);

// Cuts row a just before the first j in it with mhat[j] > mhat[a]: a <=_1 j
// would force a <=_1 mhat[j] by transitivity. Returns the pairs removed.
std::size_t prune_transitive(std::vector<int> &mhat);

Leq1Relation leq1_fixpoint(std::shared_ptr<const Grid> g, int subset_cap = 4);
Leq1Relation leq1_fixpoint_serial(std::shared_ptr<const Grid> g, int subset_cap = 4);
// Literal all-pairs, all-subsets computation on a full boolean matrix.
// Exponential; meant for grids of a few dozen points.
std::vector<std::vector<bool>> leq1_naive(const Grid &g, int subset_cap);

struct ClassMember {
  Term point;
  std::vector<Term> chain; // a_j <_1 ... <_1 a_1, with a_1 <_1 a_1*2
};
std::vector<ClassMember> class_detect(const Leq1Relation &rel, int j);

struct RelationCheck {
  bool reflexive = true, in_order = true, connected = true, transitive = true;
  std::string first_violation;
  bool ok() const { return reflexive && in_order && connected && transitive; }
};
RelationCheck check_relation(const Leq1Relation &rel);

// serialization and cache
nlohmann::json relation_to_json(const Leq1Relation &rel);
std::string relation_to_dot(const Leq1Relation &rel);
std::string cache_key(const Grid &g, int subset_cap);
std::optional<Leq1Relation> cache_load(const std::string &dir, std::shared_ptr<const Grid> g,
                                       int subset_cap);
void cache_store(const std::string &dir, const Leq1Relation &rel);
// cached fixed point; computes and stores on a miss (dir may be empty)
Leq1Relation leq1_cached(const std::string &dir, std::shared_ptr<const Grid> g, int subset_cap);

} // namespace ordwb
