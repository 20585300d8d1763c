#include "qnc/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qnc {

std::string site_to_string(const Site& s) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) os << ",";
        os << s[i];
    }
    os << ")";
    return os.str();
}

Lattice::Lattice(int d, int n) : dimension(d), site_dim(n) {
    if (d < 1) throw std::invalid_argument("lattice dimension must be >= 1");
    if (n < 2) throw std::invalid_argument("site matrix dimension must be >= 2");
}

Region::Region(std::vector<Site> sites) : sites_(std::move(sites)) {
    if (sites_.empty()) return;
    const std::size_t d = sites_[0].size();
    for (const auto& s : sites_) {
        if (s.size() != d)
            throw std::invalid_argument("region sites must share one coordinate count");
    }
    std::sort(sites_.begin(), sites_.end());
    if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end())
        throw std::invalid_argument("region contains duplicate sites");
}

Region Region::chain(long length, long origin) {
    if (length < 0) throw std::invalid_argument("chain length must be >= 0");
    std::vector<Site> s;
    s.reserve(static_cast<std::size_t>(length));
    for (long i = 0; i < length; ++i) s.push_back({origin + i});
    return Region(std::move(s));
}

Region Region::single(Site site) { return Region({std::move(site)}); }

Region Region::box(const Site& lo, const Site& hi) {
    if (lo.size() != hi.size()) throw std::invalid_argument("box corners disagree on dimension");
    std::vector<Site> out;
    Site cur = lo;
    while (true) {
        out.push_back(cur);
        std::size_t k = cur.size();
        while (k > 0) {
            --k;
            if (cur[k] < hi[k]) {
                ++cur[k];
                for (std::size_t j = k + 1; j < cur.size(); ++j) cur[j] = lo[j];
                break;
            }
            if (k == 0) return Region(std::move(out));
        }
        if (cur == lo) break;
    }
    return Region(std::move(out));
}

int Region::spatial_dim() const {
    return sites_.empty() ? -1 : static_cast<int>(sites_[0].size());
}

bool Region::contains(const Site& s) const {
    return std::binary_search(sites_.begin(), sites_.end(), s);
}

bool Region::contains(const Region& other) const {
    return std::includes(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end());
}

bool Region::intersects(const Region& other) const {
    return !intersect(other).empty();
}

Region Region::unite(const Region& other) const {
    std::vector<Site> out;
    std::set_union(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                   std::back_inserter(out));
    Region r;
    r.sites_ = std::move(out); // already sorted and unique
    return r;
}

Region Region::difference(const Region& other) const {
    std::vector<Site> out;
    std::set_difference(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                        std::back_inserter(out));
    Region r;
    r.sites_ = std::move(out);
    return r;
}

Region Region::intersect(const Region& other) const {
    std::vector<Site> out;
    std::set_intersection(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                          std::back_inserter(out));
    Region r;
    r.sites_ = std::move(out);
    return r;
}

Region Region::translated(const Site& shift) const {
    std::vector<Site> out = sites_;
    for (auto& s : out) {
        if (s.size() != shift.size())
            throw std::invalid_argument("translation vector dimension mismatch");
        for (std::size_t k = 0; k < s.size(); ++k) s[k] += shift[k];
    }
    Region r;
    r.sites_ = std::move(out); // order is translation invariant
    return r;
}

long Region::diameter() const {
    if (sites_.size() < 2) return 0;
    long diam = 0;
    const std::size_t d = sites_[0].size();
    for (std::size_t k = 0; k < d; ++k) {
        long lo = sites_[0][k], hi = sites_[0][k];
        for (const auto& s : sites_) {
            lo = std::min(lo, s[k]);
            hi = std::max(hi, s[k]);
        }
        diam = std::max(diam, hi - lo);
    }
    return diam;
}

std::vector<std::size_t> Region::positions_in(const Region& super) const {
    std::vector<std::size_t> pos;
    pos.reserve(sites_.size());
    std::size_t j = 0;
    for (const auto& s : sites_) {
        while (j < super.sites_.size() && super.sites_[j] < s) ++j;
        if (j == super.sites_.size() || super.sites_[j] != s)
            throw std::invalid_argument("region is not contained in the given super-region");
        pos.push_back(j++);
    }
    return pos;
}

std::string Region::to_string() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        if (i) os << ",";
        os << site_to_string(sites_[i]);
    }
    os << "}";
    return os.str();
}

} // namespace qnc
