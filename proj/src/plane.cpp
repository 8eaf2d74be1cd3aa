// SPDX-License-Identifier: Apache-2.0
//
// grassq: quantization bounds and codebook tools on Grassmann manifolds
// Copyright (C) 2026 the grassq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "grassq/plane.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace grassq {

namespace {

void check_orthonormal(const Matrix &g, Field field)
{
    const auto p = g.cols();
    const Matrix gram = g.adjoint() * g;
    const double err = (gram - Matrix::Identity(p, p)).cwiseAbs().maxCoeff();
    if (err > 1e-10)
        throw std::invalid_argument("plane generator columns are not orthonormal (error " +
                                    std::to_string(err) + ")");
    if (field == Field::real && g.imag().cwiseAbs().maxCoeff() > 0.0)
        throw std::invalid_argument("real-field plane has nonzero imaginary part");
}

} // namespace

Plane::Plane(Matrix generator, Field field) : generator_(std::move(generator)), field_(field)
{
    if (generator_.rows() < 1 || generator_.cols() < 1 || generator_.cols() > generator_.rows())
        throw std::invalid_argument("invalid-dimension: need 1 <= p <= n");
    check_orthonormal(generator_, field_);
}

nlohmann::json Plane::to_json() const
{
    nlohmann::json data = nlohmann::json::array();
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < p(); ++j) {
            const auto z = generator_(i, j);
            if (field_ == Field::real)
                data.push_back(z.real());
            else
                data.push_back(nlohmann::json::array({z.real(), z.imag()}));
        }
    return nlohmann::json{{"n", n()}, {"p", p()}, {"field", to_string(field_)}, {"data", std::move(data)}};
}

Plane Plane::from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("n") || !j.contains("p") || !j.contains("field") || !j.contains("data"))
        throw std::invalid_argument("schema-mismatch: plane object needs n, p, field, data");
    const int n = j.at("n").get<int>();
    const int p = j.at("p").get<int>();
    const Field field = field_from_string(j.at("field").get<std::string>());
    const auto &data = j.at("data");
    if (!data.is_array() || data.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(p))
        throw std::invalid_argument("schema-mismatch: plane data must hold n*p entries");

    Matrix g(n, p);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i)
        for (int jj = 0; jj < p; ++jj, ++k) {
            const auto &cell = data.at(k);
            if (field == Field::real) {
                if (!cell.is_number())
                    throw std::invalid_argument("schema-mismatch: real plane entries must be numbers");
                g(i, jj) = std::complex<double>(cell.get<double>(), 0.0);
            } else {
                if (!cell.is_array() || cell.size() != 2)
                    throw std::invalid_argument("schema-mismatch: complex plane entries must be [re, im]");
                g(i, jj) = std::complex<double>(cell.at(0).get<double>(), cell.at(1).get<double>());
            }
        }
    return Plane(std::move(g), field);
}

namespace detail {

Matrix gaussian_generator(int n, int p, Field field, Rng &rng)
{
    Matrix g(n, p);
    if (field == Field::real) {
        for (int j = 0; j < p; ++j)
            for (int i = 0; i < n; ++i)
                g(i, j) = std::complex<double>(rng.normal(), 0.0);
    } else {
        for (int j = 0; j < p; ++j)
            for (int i = 0; i < n; ++i)
                g(i, j) = rng.cnormal();
    }
    return g;
}

void orthonormalize(Matrix &g)
{
    const int p = static_cast<int>(g.cols());
    for (int j = 0; j < p; ++j) {
        auto col = g.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (int k = 0; k < j; ++k)
                col -= g.col(k).dot(col) * g.col(k);
        const double norm = col.norm();
        if (norm <= 0.0 || !std::isfinite(norm))
            throw std::runtime_error("rank-deficient matrix in orthonormalization");
        col /= norm;
    }
}

Matrix sample_generator(int n, int p, Field field, Rng &rng)
{
    Matrix g = gaussian_generator(n, p, field, rng);
    orthonormalize(g);
    return g;
}

double distance_sq(const Matrix &a, const Matrix &b)
{
    const double m = static_cast<double>(std::min(a.cols(), b.cols()));
    const double overlap = (a.adjoint() * b).squaredNorm();
    return std::clamp(m - overlap, 0.0, m);
}

} // namespace detail

Plane sample_uniform(int n, int p, Field field, Rng &rng)
{
    if (p < 1 || p > n)
        throw std::invalid_argument("invalid-dimension: need 1 <= p <= n");
    return Plane(detail::sample_generator(n, p, field, rng), field);
}

PrincipalAngles principal_angles(const Plane &a, const Plane &b)
{
    if (a.n() != b.n() || a.field() != b.field())
        throw std::invalid_argument("dimension-mismatch: planes must share ambient space and field");

    const Matrix cross = a.generator().adjoint() * b.generator();
    Eigen::JacobiSVD<Matrix> svd(cross);
    const auto &sv = svd.singularValues();

    PrincipalAngles out;
    out.angles.resize(sv.size());
    // singular values descend, so arccos yields angles in ascending order
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        out.angles[static_cast<std::size_t>(i)] = std::acos(std::clamp(sv(i), 0.0, 1.0));
    return out;
}

double chordal_distance_sq(const Plane &a, const Plane &b)
{
    if (a.n() != b.n() || a.field() != b.field())
        throw std::invalid_argument("dimension-mismatch: planes must share ambient space and field");
    return detail::distance_sq(a.generator(), b.generator());
}

Plane complement(const Plane &a)
{
    const int n = a.n();
    const int p = a.p();
    if (p == n)
        throw std::invalid_argument("no-complement: plane already spans the ambient space");

    Eigen::HouseholderQR<Matrix> qr(a.generator());
    Matrix full = qr.householderQ() * Matrix::Identity(n, n);
    Matrix comp = full.rightCols(n - p);
    if (a.field() == Field::real)
        comp = comp.real().cast<std::complex<double>>();
    return Plane(std::move(comp), a.field());
}

bool same_plane(const Plane &a, const Plane &b, double tol)
{
    if (a.n() != b.n() || a.p() != b.p() || a.field() != b.field())
        return false;
    return chordal_distance_sq(a, b) <= tol;
}

} // namespace grassq
