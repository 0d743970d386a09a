/*
 * Copyright 2026 The foggrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef FOGGRID_SRC_FNV1A_HPP
#define FOGGRID_SRC_FNV1A_HPP

#include <cstdint>
#include <string_view>

namespace foggrid::detail {

inline constexpr std::uint64_t fnv1a_offset = 14695981039346656037ULL;
inline constexpr std::uint64_t fnv1a_prime = 1099511628211ULL;

inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = fnv1a_offset) noexcept
{
    for (unsigned char c : bytes) {
        h ^= c;
        h *= fnv1a_prime;
    }
    return h;
}

} // namespace foggrid::detail

#endif
