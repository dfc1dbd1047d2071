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

#include "hmimo/matrix_cache.hpp"

#include <array>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace hmimo
{
    namespace
    {
        constexpr char magic[8] = {'H', 'M', 'I', 'M', 'O', 'M', 'A', 'T'};
        constexpr std::uint32_t version = 1;
        constexpr const char *suffix = ".hmat";

        template <typename T>
        void put_le(std::ostream &os, T v)
        {
            std::array<char, sizeof(T)> b;
            for (std::size_t i = 0; i < sizeof(T); ++i)
                b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
            os.write(b.data(), sizeof(T));
        }

        template <typename T>
        T get_le(std::istream &is)
        {
            std::array<unsigned char, sizeof(T)> b;
            if (!is.read(reinterpret_cast<char *>(b.data()), sizeof(T)))
                throw Error(Errc::CacheError, "truncated matrix file");
            T v = 0;
            for (std::size_t i = 0; i < sizeof(T); ++i)
                v |= static_cast<T>(b[i]) << (8 * i);
            return v;
        }
    }

    std::uint64_t content_hash(std::string_view text)
    {
        std::uint64_t h = 14695981039346656037ULL;
        for (unsigned char c : text)
        {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return h;
    }

    void write_matrix(std::ostream &os, const CMatrix &m)
    {
        os.write(magic, sizeof(magic));
        put_le<std::uint32_t>(os, version);
        put_le<std::uint32_t>(os, 0);
        put_le<std::uint64_t>(os, static_cast<std::uint64_t>(m.rows()));
        put_le<std::uint64_t>(os, static_cast<std::uint64_t>(m.cols()));
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c)
            {
                put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(m(r, c).real()));
                put_le<std::uint64_t>(os, std::bit_cast<std::uint64_t>(m(r, c).imag()));
            }
        if (!os)
            throw Error(Errc::CacheError, "failed to write matrix");
    }

    CMatrix read_matrix(std::istream &is)
    {
        char head[8];
        if (!is.read(head, sizeof(head)) || std::memcmp(head, magic, sizeof(magic)) != 0)
            throw Error(Errc::CacheError, "bad matrix file magic");
        if (get_le<std::uint32_t>(is) != version)
            throw Error(Errc::CacheError, "unsupported matrix file version");
        get_le<std::uint32_t>(is);
        const auto rows = get_le<std::uint64_t>(is), cols = get_le<std::uint64_t>(is);
        if (rows > (1u << 20) || cols > (1u << 20))
            throw Error(Errc::CacheError, "implausible matrix dimensions");
        CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c)
            {
                const double re = std::bit_cast<double>(get_le<std::uint64_t>(is));
                const double im = std::bit_cast<double>(get_le<std::uint64_t>(is));
                m(r, c) = {re, im};
            }
        return m;
    }

    MatrixCache::MatrixCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::filesystem::path MatrixCache::file_for(std::uint64_t key) const
    {
        char name[32];
        std::snprintf(name, sizeof(name), "%016llx%s", static_cast<unsigned long long>(key), suffix);
        return dir_ / name;
    }

    std::optional<CMatrix> MatrixCache::load(std::uint64_t key) const
    {
        std::ifstream in(file_for(key), std::ios::binary);
        if (!in)
            return std::nullopt;
        try
        {
            return read_matrix(in);
        }
        catch (const Error &)
        {
            return std::nullopt;
        }
    }

    void MatrixCache::store(std::uint64_t key, const CMatrix &m) const
    {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec)
            throw Error(Errc::CacheError, "cannot create cache directory " + dir_.string());
        const auto target = file_for(key);
        auto tmp = target;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw Error(Errc::CacheError, "cannot write " + tmp.string());
            write_matrix(out, m);
        }
        std::filesystem::rename(tmp, target, ec);
        if (ec)
            throw Error(Errc::CacheError, "cannot finalize " + target.string());
    }

    std::size_t MatrixCache::clear(const std::filesystem::path &dir)
    {
        std::error_code ec;
        if (!std::filesystem::is_directory(dir, ec))
            return 0;
        std::size_t removed = 0;
        for (const auto &e : std::filesystem::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == suffix)
                removed += std::filesystem::remove(e.path(), ec) ? 1 : 0;
        return removed;
    }
}
