#pragma once

#include <functional>
#include <vector>

#include "biham/config.hpp"
#include "biham/matrix.hpp"

namespace biham {

/// Joint null space of real-linear maps on n x n matrices, computed by
/// materializing each map against the real coordinate basis (2 real slots per
/// complex entry, 4 per quaternionic entry) and row-reducing the stacked
/// system. This is how commutants, bicommutants and the deformed-bracket
/// centralizers are found: those sets are real-linear even when the scalars
/// do not commute.
using CMatMap = std::function<CMatrix(const CMatrix&)>;
using QMatMap = std::function<QMatrix(const QMatrix&)>;

std::vector<CMatrix> joint_nullspace(std::size_t n, const std::vector<CMatMap>& maps,
                                     const Tolerances& tol = {});
std::vector<QMatrix> joint_nullspace_q(std::size_t n, const std::vector<QMatMap>& maps,
                                       const Tolerances& tol = {});

// Flat real coordinates of a matrix (row-major, re/im or w/x/y/z per entry).
RVec flatten(const CMatrix& m);
RVec flatten(const QMatrix& m);
CMatrix unflatten_c(const RVec& v, std::size_t rows, std::size_t cols);
QMatrix unflatten_q(const RVec& v, std::size_t rows, std::size_t cols);

}  // namespace biham
