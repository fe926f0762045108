#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "numeric.hpp"

namespace poset_zeta {

namespace detail {

class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

    std::size_t size() const { return n_; }

    bool test(std::size_t r, std::size_t c) const { return (row(r)[c / 64] >> (c % 64)) & 1u; }
    void set(std::size_t r, std::size_t c) { row(r)[c / 64] |= std::uint64_t{1} << (c % 64); }

    void or_row(std::size_t dst, std::size_t src) {
        std::uint64_t* d = row(dst);
        const std::uint64_t* s = row(src);
        for (std::size_t w = 0; w < words_; ++w) d[w] |= s[w];
    }

    bool rows_intersect(std::size_t a, const BitMatrix& other, std::size_t b) const {
        const std::uint64_t* x = row(a);
        const std::uint64_t* y = other.row(b);
        for (std::size_t w = 0; w < words_; ++w)
            if (x[w] & y[w]) return true;
        return false;
    }

    std::vector<std::size_t> row_indices(std::size_t r) const {
        std::vector<std::size_t> out;
        const std::uint64_t* x = row(r);
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = x[w];
            while (bits) {
                out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }

    BitMatrix transposed() const {
        BitMatrix t(n_);
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c : row_indices(r)) t.set(c, r);
        return t;
    }

private:
    std::uint64_t* row(std::size_t r) { return bits_.data() + r * words_; }
    const std::uint64_t* row(std::size_t r) const { return bits_.data() + r * words_; }

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

} // namespace detail

/// Chain counts (N̄_0, ..., N̄_d): counts[i] is the number of strict chains
/// x_0 < x_1 < ... < x_i.
struct ChainVector {
    std::vector<Integer> counts;

    long dimension() const { return static_cast<long>(counts.size()) - 1; }
    const Integer& operator[](std::size_t i) const { return counts[i]; }
    friend bool operator==(const ChainVector&, const ChainVector&) = default;
};

/// Finite poset with a transitively closed strict order stored as a dense
/// bit matrix.  Immutable once built.
class Poset {
public:
    /// Takes ownership of an already transitively closed strict relation.
    /// Only irreflexivity and acyclicity are re-checked here.
    static Poset from_closed_relation(std::vector<std::string> labels, detail::BitMatrix less);

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }

    bool less(std::size_t a, std::size_t b) const { return less_.test(a, b); }

    /// Elements strictly below / above x.
    std::vector<std::size_t> below(std::size_t x) const { return greater_.row_indices(x); }
    std::vector<std::size_t> above(std::size_t x) const { return less_.row_indices(x); }

    /// A linear extension: every element appears after everything below it.
    const std::vector<std::size_t>& linear_extension() const { return order_; }

    /// Pairs (a, b) with a covered by b, ordered by (a, b).
    std::vector<std::pair<std::size_t, std::size_t>> cover_relations() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t b = 0; b < size(); ++b)
            for (std::size_t a : below(b))
                if (!less_.rows_intersect(a, greater_, b)) out.emplace_back(a, b);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t relation_count() const {
        std::size_t n = 0;
        for (std::size_t a = 0; a < size(); ++a) n += above(a).size();
        return n;
    }

private:
    std::vector<std::string> labels_;
    detail::BitMatrix less_;
    detail::BitMatrix greater_;
    std::vector<std::size_t> order_;
};

namespace detail {

/// Kahn's algorithm over an arbitrary edge relation; empty result on a cycle.
inline std::vector<std::size_t> topological_order(std::size_t n, const std::vector<std::vector<std::size_t>>& succ) {
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& out : succ)
        for (std::size_t b : out) ++indegree[b];
    std::vector<std::size_t> ready;
    for (std::size_t i = n; i-- > 0;)
        if (indegree[i] == 0) ready.push_back(i);
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        const std::size_t a = ready.back();
        ready.pop_back();
        order.push_back(a);
        for (std::size_t b : succ[a])
            if (--indegree[b] == 0) ready.push_back(b);
    }
    if (order.size() != n) return {};
    return order;
}

} // namespace detail

inline Poset Poset::from_closed_relation(std::vector<std::string> labels, detail::BitMatrix less) {
    const std::size_t n = labels.size();
    std::vector<std::vector<std::size_t>> succ(n);
    for (std::size_t a = 0; a < n; ++a) {
        if (less.test(a, a)) fail(ErrorCode::CycleDetected, "element '" + labels[a] + "' is below itself");
        succ[a] = less.row_indices(a);
    }
    auto order = detail::topological_order(n, succ);
    if (order.size() != n) fail(ErrorCode::CycleDetected, "strict relation contains a cycle");
    Poset p;
    p.labels_ = std::move(labels);
    p.greater_ = less.transposed();
    p.less_ = std::move(less);
    p.order_ = std::move(order);
    return p;
}

/// Builds a poset from labels and generating pairs (a, b) meaning a < b;
/// the strict order is the transitive closure of the pairs.
inline Poset build_poset(const std::vector<std::string>& labels,
                         const std::vector<std::pair<std::string, std::string>>& relations) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!index.emplace(labels[i], i).second) fail(ErrorCode::DuplicateLabel, "duplicate label '" + labels[i] + "'");

    const std::size_t n = labels.size();
    std::vector<std::vector<std::size_t>> succ(n);
    for (const auto& [a, b] : relations) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end()) fail(ErrorCode::UnknownLabel, "unknown label '" + a + "'");
        if (ib == index.end()) fail(ErrorCode::UnknownLabel, "unknown label '" + b + "'");
        if (ia->second == ib->second) fail(ErrorCode::CycleDetected, "relation '" + a + "' < '" + a + "'");
        succ[ia->second].push_back(ib->second);
    }
    auto order = detail::topological_order(n, succ);
    if (order.size() != n) fail(ErrorCode::CycleDetected, "relations contain a cycle");

    // Closure: walk the topological order backwards, so every successor's
    // reachable set is final before it is merged.
    detail::BitMatrix less(n);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const std::size_t a = *it;
        for (std::size_t b : succ[a]) {
            less.set(a, b);
            less.or_row(a, b);
        }
    }
    return Poset::from_closed_relation(labels, std::move(less));
}

inline void require_nonempty(const Poset& p) {
    if (p.empty()) fail(ErrorCode::EmptyPoset, "poset has no elements");
}

inline long dimension(const Poset& p) {
    require_nonempty(p);
    std::vector<long> height(p.size(), 0);
    long best = 0;
    for (std::size_t x : p.linear_extension()) {
        for (std::size_t y : p.below(x)) height[x] = std::max(height[x], height[y] + 1);
        best = std::max(best, height[x]);
    }
    return best;
}

/// Per-element strict chain counts: result[i][x] is the number of chains
/// x_0 < ... < x_i = x.
inline std::vector<std::vector<Integer>> chains_ending_at(const Poset& p) {
    require_nonempty(p);
    const long d = dimension(p);
    std::vector<std::vector<std::size_t>> below(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) below[x] = p.below(x);
    std::vector<std::vector<Integer>> table(static_cast<std::size_t>(d + 1), std::vector<Integer>(p.size(), 0));
    std::fill(table[0].begin(), table[0].end(), Integer(1));
    for (std::size_t len = 1; len < table.size(); ++len)
        for (std::size_t x = 0; x < p.size(); ++x)
            for (std::size_t y : below[x]) table[len][x] += table[len - 1][y];
    return table;
}

inline ChainVector strict_chain_vector(const Poset& p) {
    ChainVector v;
    for (const auto& row : chains_ending_at(p))
        v.counts.push_back(std::accumulate(row.begin(), row.end(), Integer(0)));
    return v;
}

/// Sum of the entries of A^i, A the reflexive (<=) adjacency matrix.
inline Integer weak_chain_count(const Poset& p, unsigned long i) {
    require_nonempty(p);
    std::vector<std::vector<std::size_t>> above(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) above[x] = p.above(x);
    std::vector<Integer> v(p.size(), Integer(1));
    for (unsigned long step = 0; step < i; ++step) {
        std::vector<Integer> next = v;
        for (std::size_t x = 0; x < p.size(); ++x)
            for (std::size_t y : above[x]) next[x] += v[y];
        v = std::move(next);
    }
    return std::accumulate(v.begin(), v.end(), Integer(0));
}

inline Integer euler_characteristic(const ChainVector& v) {
    Integer chi = 0;
    for (std::size_t i = 0; i < v.counts.size(); ++i) {
        if (i % 2 == 0) chi += v.counts[i];
        else chi -= v.counts[i];
    }
    return chi;
}

inline Integer euler_characteristic(const Poset& p) { return euler_characteristic(strict_chain_vector(p)); }

inline constexpr std::size_t kDefaultSubdivisionCap = 20'000;

/// Label of a chain element of Sd(P): member labels bottom to top, in braces.
inline std::string chain_label(const Poset& p, const std::vector<std::size_t>& chain) {
    std::string s = "{";
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) s += ",";
        s += p.label(chain[i]);
    }
    return s + "}";
}

/// Sd(P): all nonempty chains of P ordered by strict inclusion.  Elements are
/// sorted by chain length, then lexicographically by member index.
inline Poset barycentric_subdivision(const Poset& p, std::size_t cap = kDefaultSubdivisionCap) {
    require_nonempty(p);
    const ChainVector counts = strict_chain_vector(p);
    const Integer total = std::accumulate(counts.counts.begin(), counts.counts.end(), Integer(0));
    if (total > cap)
        fail(ErrorCode::SubdivisionTooLarge,
             "subdivision would have " + total.get_str() + " elements (cap " + std::to_string(cap) + ")");

    std::vector<std::vector<std::size_t>> above(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) above[x] = p.above(x);

    std::vector<std::vector<std::size_t>> chains;
    chains.reserve(total.get_ui());
    std::vector<std::vector<std::size_t>> frontier;
    for (std::size_t x = 0; x < p.size(); ++x) frontier.push_back({x});
    while (!frontier.empty()) {
        std::sort(frontier.begin(), frontier.end());
        std::vector<std::vector<std::size_t>> next;
        for (const auto& c : frontier)
            for (std::size_t y : above[c.back()]) {
                auto e = c;
                e.push_back(y);
                next.push_back(std::move(e));
            }
        for (auto& c : frontier) chains.push_back(std::move(c));
        frontier = std::move(next);
    }

    std::map<std::vector<std::size_t>, std::size_t> id;
    for (std::size_t i = 0; i < chains.size(); ++i) id.emplace(chains[i], i);

    // Inclusion is already transitive: every proper nonempty subset of a
    // chain is a chain, so set all of them directly.
    detail::BitMatrix less(chains.size());
    std::vector<std::size_t> sub;
    for (std::size_t b = 0; b < chains.size(); ++b) {
        const auto& c = chains[b];
        const std::uint64_t full = (std::uint64_t{1} << c.size()) - 1;
        for (std::uint64_t mask = 1; mask < full; ++mask) {
            sub.clear();
            for (std::size_t k = 0; k < c.size(); ++k)
                if (mask >> k & 1u) sub.push_back(c[k]);
            less.set(id.at(sub), b);
        }
    }

    std::vector<std::string> labels;
    labels.reserve(chains.size());
    for (const auto& c : chains) labels.push_back(chain_label(p, c));
    return Poset::from_closed_relation(std::move(labels), std::move(less));
}

inline Poset iterated_subdivision(Poset p, unsigned k, std::size_t cap = kDefaultSubdivisionCap) {
    for (unsigned i = 0; i < k; ++i) p = barycentric_subdivision(p, cap);
    return p;
}

} // namespace poset_zeta
