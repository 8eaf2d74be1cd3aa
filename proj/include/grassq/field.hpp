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

#include <stdexcept>
#include <string>

namespace grassq {

/// Scalar field of the ambient space. beta = 1 for real, 2 for complex.
enum class Field { real, complex };

inline int beta_of(Field f) { return f == Field::real ? 1 : 2; }

inline const char *to_string(Field f) { return f == Field::real ? "real" : "complex"; }

inline Field field_from_string(const std::string &s)
{
    if (s == "real")
        return Field::real;
    if (s == "complex")
        return Field::complex;
    throw std::invalid_argument("unknown field '" + s + "' (expected 'real' or 'complex')");
}

} // namespace grassq
