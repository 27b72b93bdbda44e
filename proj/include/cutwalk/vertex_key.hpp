#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <cstring>
#include <functional>
#include <initializer_list>
#include <string>

namespace cutwalk {

using Coord = std::int64_t;

/// Canonical vertex encoding: a fixed-width tuple of signed integers whose
/// meaning is family-specific (lattice coordinates, Heisenberg triple,
/// (lattice coords, finite-factor index), or a reduced word over generators).
/// Equality of keys is equality of vertices within a family.
class VertexKey {
public:
    // Inline capacity 7 covers every built-in family except long free-group
    // words, which spill to the heap.
    using Storage = boost::container::small_vector<Coord, 7>;

    VertexKey() = default;
    explicit VertexKey(Storage coords) : coords_(std::move(coords)) {}
    VertexKey(std::initializer_list<Coord> coords) : coords_(coords) {}

    const Storage& coords() const { return coords_; }
    Storage& coords() { return coords_; }

    std::size_t size() const { return coords_.size(); }
    Coord operator[](std::size_t i) const { return coords_[i]; }
    Coord& operator[](std::size_t i) { return coords_[i]; }

    void push_back(Coord c) { coords_.push_back(c); }
    void pop_back() { coords_.pop_back(); }
    bool empty() const { return coords_.empty(); }
    Coord back() const { return coords_.back(); }

    friend bool operator==(const VertexKey& a, const VertexKey& b) {
        return a.coords_ == b.coords_;
    }
    friend bool operator!=(const VertexKey& a, const VertexKey& b) { return !(a == b); }

    /// Lexicographic order; used for canonical representative selection and
    /// deterministic serialization, not for any geometric meaning.
    friend bool operator<(const VertexKey& a, const VertexKey& b) {
        const std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (a.coords_[i] != b.coords_[i]) return a.coords_[i] < b.coords_[i];
        }
        return a.size() < b.size();
    }

    /// 64-bit hash of the coordinate tuple, mixing one little-endian word per
    /// coordinate (platform-independent: pure integer arithmetic on the
    /// values). Chained splitmix64 finalizers give full positional avalanche
    /// at ~1 multiply-chain per coordinate, cheap enough for the walk-length
    /// hash maps that dominate cut detection.
    std::uint64_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ (coords_.size() * 0xff51afd7ed558ccdULL);
        for (const Coord c : coords_) {
            h ^= static_cast<std::uint64_t>(c);
            h ^= h >> 30;
            h *= 0xbf58476d1ce4e5b9ULL;
            h ^= h >> 27;
            h *= 0x94d049bb133111ebULL;
            h ^= h >> 31;
        }
        return h;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(coords_[i]);
        }
        s += ")";
        return s;
    }

private:
    Storage coords_;
};

struct VertexKeyHash {
    std::size_t operator()(const VertexKey& k) const {
        return static_cast<std::size_t>(k.hash());
    }
};

}  // namespace cutwalk
