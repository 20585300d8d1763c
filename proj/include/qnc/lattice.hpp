#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace qnc {

/// A lattice site: d integer coordinates.
using Site = std::vector<long>;

std::string site_to_string(const Site& s);

/// Ambient lattice data: spatial dimension d and single-site matrix
/// dimension n (spin-1/2 by default).
struct Lattice {
    int dimension = 1;
    int site_dim = 2;

    Lattice() = default;
    Lattice(int d, int n);

    friend bool operator==(const Lattice&, const Lattice&) = default;
};

/// Finite subset of the integer lattice, kept in canonical lexicographic
/// order. Two regions with equal site sets compare equal.
class Region {
  public:
    Region() = default;
    explicit Region(std::vector<Site> sites);

    /// 1-D chain {origin, ..., origin+length-1}.
    static Region chain(long length, long origin = 0);
    static Region single(Site site);
    /// Inclusive axis-aligned box.
    static Region box(const Site& lo, const Site& hi);

    const std::vector<Site>& sites() const { return sites_; }
    std::size_t size() const { return sites_.size(); }
    bool empty() const { return sites_.empty(); }

    /// Coordinate count of the stored sites, -1 when empty.
    int spatial_dim() const;

    bool contains(const Site& s) const;
    bool contains(const Region& other) const;
    bool intersects(const Region& other) const;

    Region unite(const Region& other) const;
    Region difference(const Region& other) const;
    Region intersect(const Region& other) const;
    Region translated(const Site& shift) const;

    /// Chebyshev (sup-metric) diameter; 0 for empty or singleton regions.
    long diameter() const;

    /// Index of each of our sites inside the (containing) super-region.
    std::vector<std::size_t> positions_in(const Region& super) const;

    std::string to_string() const;

    friend bool operator==(const Region&, const Region&) = default;
    friend std::strong_ordering operator<=>(const Region& a, const Region& b) {
        return a.sites_ <=> b.sites_;
    }

  private:
    std::vector<Site> sites_;
};

} // namespace qnc
