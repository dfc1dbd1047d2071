// SPDX-License-Identifier: Apache-2.0
//
// hmimo: wavenumber-domain uplink simulation for holographic MIMO surfaces
// Copyright (C) 2026 The hmimo contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "hmimo/types.hpp"

namespace hmimo
{
    // 64-bit FNV-1a of a canonical parameter string.
    std::uint64_t content_hash(std::string_view text);

    // Layout: "HMIMOMAT", u32 version (1), u32 reserved (0), u64 rows,
    // u64 cols, then rows*cols (re, im) float64 pairs in row-major order.
    // All integers and floats are little-endian.
    void write_matrix(std::ostream &os, const CMatrix &m);
    CMatrix read_matrix(std::istream &is);

    class MatrixCache
    {
    public:
        explicit MatrixCache(std::filesystem::path dir);

        std::optional<CMatrix> load(std::uint64_t key) const;
        void store(std::uint64_t key, const CMatrix &m) const;
        std::filesystem::path file_for(std::uint64_t key) const;

        // Removes every cache file in dir; returns the count removed.
        static std::size_t clear(const std::filesystem::path &dir);

    private:
        std::filesystem::path dir_;
    };
}
