#pragma once

#include "tcrcalc/abelian.hpp"
#include "tcrcalc/budget.hpp"
#include "tcrcalc/enumeration.hpp"
#include "tcrcalc/graded.hpp"
#include "tcrcalc/ring.hpp"
#include "tcrcalc/ring_spec.hpp"
#include "tcrcalc/witt.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tcrcalc {

struct Window {
  int lo = 0;
  int hi = 0;
};

// A perfect ring of characteristic 2 seen through its additive group, with the square root.
struct PerfectChar2 {
  FinRing ring;
  AdditiveChart chart;
  GroupHom square;  // additive in characteristic 2
  GroupHom sqrt;
  std::size_t dim() const { return chart.group().rank(); }
};

// Refuses unless char = 2 and squaring is bijective.
PerfectChar2 perfect_char2(const FinRing& k);

// Summand (n, m) of degree n + m.
struct SummandLabel {
  int n = 0, m = 0;
  friend bool operator==(const SummandLabel&, const SummandLabel&) = default;
};

// One level of the geometric fixed-point tower: groups of level l, the maps R, F from
// level l+1 to level l, and the involution on level l.
struct TowerLevel {
  unsigned level = 1;
  Window window;
  std::map<int, FinAbGroup> groups;
  std::map<int, FinAbGroup> next_groups;             // level l+1
  std::map<int, std::vector<SummandLabel>> labels;   // closed form only
  GradedHom R, F, sigma;
};

// Whole tower up to a level, degrees 0..max_degree.
struct TowerStage {
  std::map<int, FinAbGroup> groups;
  GradedHom sigma;
  GradedHom R, F;  // to the previous stage; empty at level 1
};

struct Tower {
  int max_degree = 0;
  std::vector<TowerStage> stages;  // stages[l-1] is level l
  TowerLevel level(unsigned l, Window window) const;
};

// Labels of degree d in the order used for coordinates: (n, d-n) for n = 0..d.
std::vector<SummandLabel> degree_labels(int d);

// Closed-form tower: each level is the sum of copies of k over (n, m) with n + m = *.
Tower closed_form_tower(const PerfectChar2& k, unsigned levels, int max_degree);
// Tower built level by level as kernels of the Mayer-Vietoris difference map.
Tower oracle_tower(const PerfectChar2& k, unsigned levels, int max_degree, const Budget& budget = {});

TowerLevel trr_phi_tower(const FinRing& k, unsigned level, Window window);
TowerLevel trr_phi_oracle(const FinRing& k, unsigned level, Window window, const Budget& budget = {});

// The maps r, f from the fixed-point level to the underlying level, degree d.
struct FixedPointData {
  FinAbGroup fixed;       // sum over fixed and induced summands
  FinAbGroup underlying;  // sum over all (n, m)
  GroupHom r, f, sigma;   // sigma on the underlying level
};
FixedPointData fixed_point_data(const PerfectChar2& k, int d);

struct TowerComparison {
  bool ok = true;
  std::vector<std::string> failures;
  // Base change from the oracle level l to the closed-form level l, per degree.
  std::vector<std::map<int, GroupHom>> base_change;
};

// Searches for isomorphisms intertwining R, F and σ of the two towers.
TowerComparison compare_towers(const Tower& oracle, const Tower& closed);

struct TowerLimit {
  GradedGroups groups;
  std::map<int, GroupHom> frobenius;   // endomorphism of each limit group
  std::map<int, GroupHom> to_level1;   // limit group -> level 1
  unsigned depth = 0;
  bool frobenius_is_square = false;    // checked against squaring on the diagonal summand
};

TowerLimit trr_phi_limit(const FinRing& k, Window window, unsigned depth = 5, const Budget& budget = {});

// Groups of the fibre of r - f, degreewise.
GradedGroups tcr_phi_char2_field(const FinRing& k, Window window);
GradedGroups tcr_phi_perfect_algebra(const FinRing& a, Window window);

struct TorsionFreeResult {
  GradedGroups groups;
  unsigned level = 0;  // truncation at which the transition maps became isomorphisms
  FinAbGroup b_mod_square_sum, kernel_pr, kernel_frobenius;
};

TorsionFreeResult tcr_phi_torsionfree(const ProRing& b, Window window, unsigned depth = 8,
                                      const Budget& budget = {});

// Fibre of the Bockstein-type map computed from explicit chain complexes.
GradedGroups tcr_phi_Z_oracle(Window window);

// Connecting element of 0 -> Z/2 -> Z/8 -> Z/4 -> 0 as a class in Z/2.
Integer bockstein_class();

struct OddResult {
  bool transfer_surjective = false;
  bool vanishes = false;
  bool action_additive = true;
  FinAbGroup quotient;  // A^{Z/2} / tr A
  FinAbGroup pi0;
};

OddResult tcr_phi_odd(const InvRing& a, unsigned p, const Budget& budget = {});

struct OddFieldResult {
  GradedGroups groups;
  unsigned level = 0;
  std::vector<FinAbGroup> pi0_levels, pim1_levels;  // index m-1 is truncation m
};

OddFieldResult tcr_odd_perfect_field(const FinRing& k, unsigned p, unsigned depth, const Budget& budget = {});

// The fixed-point Green functor of W_{n+1}(A;2) with the involution W(w).
struct GreenFunctorData {
  unsigned level = 0;  // n
  WittStructure underlying;
  std::vector<Elem> w;  // W(w) on encoded underlying elements
  WittStructure fixed;
  FixedSubring base_fixed;
  std::vector<Elem> res;  // fixed -> underlying
  std::vector<Elem> tr;   // underlying -> fixed
  GroupHom res_hom, tr_hom;
};

GreenFunctorData pi0_trr_green(const InvRing& a, unsigned n, const Budget& budget = {});

// Exhaustive check of the Green functor axioms; empty when all hold.
std::vector<std::string> green_axiom_failures(const GreenFunctorData& g);
// R commutes with res and tr between levels n and n-1.
std::vector<std::string> green_restriction_failures(const GreenFunctorData& upper, const GreenFunctorData& lower);

struct MLReport {
  std::vector<bool> iso;  // index n-1: R from truncation n+1 to n
  std::vector<FinAbGroup> quotients;  // index n-1: W_n(A^{Z/2}) / tr
  bool all = false;
};

MLReport ml_check(const InvRing& a, unsigned depth, const Budget& budget = {});

}  // namespace tcrcalc
