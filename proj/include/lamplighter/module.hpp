#pragma once

#include <optional>

#include "lamplighter/poly.hpp"

namespace lamp {

// Element of a free module R^d, coordinates share one ring.
struct ModElem {
    std::vector<Poly> coords;

    ModElem() = default;
    ModElem(RingPtr ring, size_t d) : coords(d, Poly(ring)) {}
    explicit ModElem(std::vector<Poly> c) : coords(std::move(c)) {}

    size_t rank() const { return coords.size(); }
    const RingPtr& ring() const { return coords.at(0).ring(); }

    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }

    ModElem operator+(const ModElem& o) const {
        ModElem r;
        r.coords.reserve(coords.size());
        for (size_t i = 0; i < coords.size(); ++i) r.coords.push_back(coords[i] + o.coords[i]);
        return r;
    }
    ModElem operator-(const ModElem& o) const {
        ModElem r;
        r.coords.reserve(coords.size());
        for (size_t i = 0; i < coords.size(); ++i) r.coords.push_back(coords[i] - o.coords[i]);
        return r;
    }
    ModElem operator-() const {
        ModElem r;
        r.coords.reserve(coords.size());
        for (const auto& c : coords) r.coords.push_back(-c);
        return r;
    }
    ModElem scaled_by(const Poly& f) const {
        ModElem r;
        r.coords.reserve(coords.size());
        for (const auto& c : coords) r.coords.push_back(f * c);
        return r;
    }
    bool operator==(const ModElem& o) const { return coords == o.coords; }

    static ModElem unit(RingPtr ring, size_t d, size_t i, Poly f) {
        ModElem r(ring, d);
        r.coords.at(i) = std::move(f);
        return r;
    }
    static ModElem single(Poly f) {
        ModElem r;
        r.coords.push_back(std::move(f));
        return r;
    }

    size_t hash() const {
        size_t h = 14695981039346656037ull;
        for (const auto& c : coords) h = h * 1099511628211ull ^ c.hash();
        return h;
    }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ", ";
            s += coords[i].str();
        }
        return s + ")";
    }
};

// Finitely presented module R^d / <relations>.
struct ModulePresentation {
    RingPtr ring;
    uint32_t rank = 1;
    std::vector<ModElem> relations;

    ModulePresentation() = default;
    ModulePresentation(RingPtr r, uint32_t d) : ring(std::move(r)), rank(d) {}
    ModulePresentation(RingPtr r, uint32_t d, std::vector<ModElem> rels)
        : ring(std::move(r)), rank(d), relations(std::move(rels)) {}
};

// Integer lattice given by a basis in Hermite normal form (rows).
struct Lattice {
    uint32_t ambient_dim = 0;
    std::vector<IntVec> basis;  // linearly independent rows, HNF

    uint32_t dim() const { return static_cast<uint32_t>(basis.size()); }
    bool contains(const IntVec& v) const;
    // Coordinates of v in the basis, if v lies in the lattice.
    std::optional<IntVec> coordinates(const IntVec& v) const;
};

// Row-style Hermite normal form of the span of `rows`; also reports, for each
// HNF basis vector, an integer combination of the input rows realizing it.
Lattice hermite_lattice(uint32_t ambient_dim, const std::vector<IntVec>& rows,
                        std::vector<IntVec>* combos = nullptr);

// Basis of {w : sum_i w_i rows[i] = 0}.
std::vector<IntVec> integer_kernel(const std::vector<IntVec>& rows, uint32_t ambient_dim);

// Complement basis: vectors extending a saturated lattice to a basis of Z^n.
// Requires (and enforces) saturation of the input span.
std::vector<IntVec> saturation_basis(uint32_t ambient_dim, const std::vector<IntVec>& rows);
std::vector<IntVec> lattice_complement(uint32_t ambient_dim, const std::vector<IntVec>& sat_basis);

}  // namespace lamp
