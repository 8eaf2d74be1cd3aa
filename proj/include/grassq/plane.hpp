// SPDX-License-Identifier: Apache-2.0
//
// grassq: quantization bounds and codebook tools on Grassmann manifolds
// Copyright (C) 2026 the grassq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>
#include <vector>

#include "grassq/field.hpp"
#include "grassq/rng.hpp"

namespace grassq {

using Matrix = Eigen::MatrixXcd;

/// Point of G_{n,p}(L), stored as an n x p generator matrix with orthonormal
/// columns. The generator is defined only up to a right unitary factor; all
/// operations on planes are invariant to that gauge.
class Plane {
  public:
    /// Validates column orthonormality (1e-10 entrywise) and, for the real
    /// field, that the generator has no imaginary part.
    Plane(Matrix generator, Field field);

    int n() const { return static_cast<int>(generator_.rows()); }
    int p() const { return static_cast<int>(generator_.cols()); }
    Field field() const { return field_; }
    const Matrix &generator() const { return generator_; }

    nlohmann::json to_json() const;
    static Plane from_json(const nlohmann::json &j);

  private:
    Matrix generator_;
    Field field_;
};

/// Sorted principal angles between two planes, ascending in [0, pi/2].
struct PrincipalAngles {
    std::vector<double> angles;
};

/// Draws a plane from the invariant (uniform) distribution: i.i.d. Gaussian
/// entries orthonormalized with a positive-diagonal triangular factor, which
/// pins the gauge and makes sampling reproducible.
Plane sample_uniform(int n, int p, Field field, Rng &rng);

PrincipalAngles principal_angles(const Plane &a, const Plane &b);

/// Squared chordal distance min(p,q) - tr(A' B B' A), clamped to
/// [0, min(p,q)]. Plane dimensions may differ.
double chordal_distance_sq(const Plane &a, const Plane &b);

/// Orthogonal complement plane in G_{n,n-p}. Throws for p == n.
Plane complement(const Plane &a);

/// Plane identity up to gauge: squared chordal distance below tol.
bool same_plane(const Plane &a, const Plane &b, double tol = 1e-10);

namespace detail {

/// n x p generator with i.i.d. Gaussian entries (real, or CN(0,1)).
Matrix gaussian_generator(int n, int p, Field field, Rng &rng);

/// In-place modified Gram-Schmidt with a second re-orthogonalization pass.
/// Column norms are the (positive) diagonal of the triangular factor, so the
/// result carries the positive-diagonal gauge.
void orthonormalize(Matrix &g);

/// Uniform generator draw without the Plane validation wrapper (hot path).
Matrix sample_generator(int n, int p, Field field, Rng &rng);

/// Squared chordal distance between raw generators.
double distance_sq(const Matrix &a, const Matrix &b);

} // namespace detail

} // namespace grassq
