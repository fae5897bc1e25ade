#pragma once

// Reduced cohomology of the one-point compactification of the unordered
// configuration space C_r(C), from the Fox-Neuwirth cell structure: a cell
// for every composition (a_1, ..., a_k) of r (points grouped on k vertical
// lines, a_i on line i), of dimension r + k. Merging adjacent lines is the
// only boundary that does not run off to the point at infinity.

#include <map>

#include "ratmaps/bookkeeping.hpp"
#include "ratmaps/chain_complex.hpp"
#include "ratmaps/simplicial.hpp"

namespace ratmaps {

/// Gaussian binomial [n choose k] at q = -1.
long gaussian_binomial_minus_one(int n, int k);

CellComplex fox_neuwirth_complex(int r);

/// degree -> rank, zero ranks omitted. Throws std::out_of_range when r < 1 or r > bound.
std::map<int, long> fox_neuwirth_betti(int r, FieldKind field, int bound = 4);

/// All degrees 0..2r for r = 1..rmax, zero ranks included (m = 1).
BettiTable fox_neuwirth_table(int rmax, FieldKind field, int bound = 4);

/// Triangulated [0,1]^3 x S^1 (2 x 2 x 2 grid, circle of period 3) whose
/// interior is homeomorphic to C_2(C) = C x C^*.
SimplicialComplex c2_model();
/// Chain complex of the model relative to its boundary [0,1]^3-faces x S^1.
CellComplex c2_model_relative();
/// H^*_c(C_2(C)) ranks from the model: degree -> rank, zeros omitted.
std::map<int, long> c2_model_betti(FieldKind field);

}  // namespace ratmaps
