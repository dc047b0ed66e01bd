#pragma once

// Nonnegative integer matrices, their edge shifts, and admissible-word machinery.
//
// Edges of X_A are indexed by (source, target, copy) in lexicographic order; this
// ordering is part of every rule-table contract in the library.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "sftlab/errors.hpp"
#include "sftlab/rational.hpp"

namespace sftlab {

using State = std::uint32_t;
using Edge = std::uint32_t;
using Word = std::vector<Edge>;

class NonnegIntMatrix {
public:
    NonnegIntMatrix() = default;
    explicit NonnegIntMatrix(std::vector<std::vector<long long>> rows) : rows_(std::move(rows)) {
        const std::size_t k = rows_.size();
        if (k == 0) throw InvalidMatrix("matrix must have at least one row");
        bool nonzero = false;
        for (const auto& r : rows_) {
            if (r.size() != k) throw InvalidMatrix("matrix must be square");
            for (long long v : r) {
                if (v < 0) throw InvalidMatrix("matrix entries must be nonnegative");
                nonzero = nonzero || v != 0;
            }
        }
        if (!nonzero) throw ZeroMatrix();
    }

    NonnegIntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
        : NonnegIntMatrix(std::vector<std::vector<long long>>(rows.begin(), rows.end())) {}

    static NonnegIntMatrix full_shift(unsigned n) {
        if (n == 0) throw ZeroMatrix();
        return NonnegIntMatrix(std::vector<std::vector<long long>>(1, std::vector<long long>(1, n)));
    }

    std::size_t size() const noexcept { return rows_.size(); }
    long long operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    const std::vector<std::vector<long long>>& rows() const noexcept { return rows_; }

    long long total() const {
        long long t = 0;
        for (const auto& r : rows_)
            for (long long v : r) t += v;
        return t;
    }

    NonnegIntMatrix transpose() const {
        std::vector<std::vector<long long>> t(size(), std::vector<long long>(size()));
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) t[j][i] = rows_[i][j];
        return NonnegIntMatrix(std::move(t));
    }

    ZMatrix to_zmatrix() const {
        ZMatrix z(size(), size());
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) z(i, j) = rows_[i][j];
        return z;
    }

    bool operator==(const NonnegIntMatrix&) const = default;

private:
    std::vector<std::vector<long long>> rows_;
};

struct EdgeInfo {
    State source;
    State target;
    std::uint32_t copy;
};

class EdgeShift;
using ShiftPtr = std::shared_ptr<const EdgeShift>;

/// Recorded factorization of a Kronecker product shift. Product edge (e, f) has
/// index join[e * right_edges + f].
struct ProductFactors {
    ShiftPtr left;
    ShiftPtr right;
    std::vector<std::pair<Edge, Edge>> split;
    std::vector<Edge> join;
};

class EdgeShift {
public:
    /// build_edge_shift: never rejects reducible or zero-entropy input; those set flags.
    static ShiftPtr build(NonnegIntMatrix matrix) { return std::shared_ptr<EdgeShift>(new EdgeShift(std::move(matrix))); }

    const NonnegIntMatrix& matrix() const noexcept { return matrix_; }
    std::size_t num_states() const noexcept { return matrix_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    const EdgeInfo& edge(Edge e) const { return edges_.at(e); }
    State source(Edge e) const { return edges_[e].source; }
    State target(Edge e) const { return edges_[e].target; }
    std::span<const Edge> out_edges(State s) const { return out_[s]; }
    std::span<const Edge> in_edges(State s) const { return in_[s]; }

    Edge edge_index(State s, State t, std::uint32_t copy) const {
        if (s >= num_states() || t >= num_states() || copy >= static_cast<std::uint64_t>(matrix_(s, t)))
            throw InputError("no such edge");
        return first_edge_[s * num_states() + t] + copy;
    }

    bool irreducible() const noexcept { return irreducible_; }
    bool primitive() const noexcept { return primitive_; }
    bool positive_entropy() const noexcept { return positive_entropy_; }
    std::size_t period() const noexcept { return period_; }

    /// State lies on a backward-infinite / forward-infinite path.
    bool has_past(State s) const { return has_past_[s]; }
    bool has_future(State s) const { return has_future_[s]; }
    /// Every finite path extends to a bi-infinite one.
    bool all_essential() const noexcept { return all_essential_; }

    bool word_extendable(std::span<const Edge> w) const {
        if (w.empty()) return true;
        return has_past_[source(w.front())] && has_future_[target(w.back())];
    }

    bool is_admissible(std::span<const Edge> w) const {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] >= num_edges()) return false;
            if (i > 0 && target(w[i - 1]) != source(w[i])) return false;
        }
        return true;
    }

    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (!irreducible_) w.emplace_back("reducible");
        if (!positive_entropy_) w.emplace_back("zero entropy");
        return w;
    }

    const ProductFactors* factors() const noexcept { return factors_.get(); }

    /// Same matrix (hence same edge set and indexing).
    bool same_system(const EdgeShift& other) const { return matrix_ == other.matrix_; }

    /// Boolean reachability by paths of exactly `len` edges.
    std::vector<std::vector<bool>> reach_exact(std::size_t len) const {
        const std::size_t k = num_states();
        std::vector<std::vector<bool>> r(k, std::vector<bool>(k, false));
        for (std::size_t i = 0; i < k; ++i) r[i][i] = true;
        for (std::size_t step = 0; step < len; ++step) {
            std::vector<std::vector<bool>> next(k, std::vector<bool>(k, false));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t m = 0; m < k; ++m)
                    if (r[i][m])
                        for (std::size_t j = 0; j < k; ++j)
                            if (matrix_(m, j) > 0) next[i][j] = true;
            r = std::move(next);
        }
        return r;
    }

private:
    friend ShiftPtr kronecker_product(const ShiftPtr& a, const ShiftPtr& b);

    explicit EdgeShift(NonnegIntMatrix matrix) : matrix_(std::move(matrix)) {
        const std::size_t k = matrix_.size();
        out_.assign(k, {});
        in_.assign(k, {});
        first_edge_.assign(k * k, 0);
        for (State s = 0; s < k; ++s)
            for (State t = 0; t < k; ++t) {
                first_edge_[s * k + t] = static_cast<Edge>(edges_.size());
                for (long long c = 0; c < matrix_(s, t); ++c) {
                    Edge e = static_cast<Edge>(edges_.size());
                    edges_.push_back({s, t, static_cast<std::uint32_t>(c)});
                    out_[s].push_back(e);
                    in_[t].push_back(e);
                }
            }
        classify();
    }

    void classify() {
        const std::size_t k = num_states();
        // reach[i][j]: path of length >= 1 from i to j.
        std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) reach[i][j] = matrix_(i, j) > 0;
        for (std::size_t m = 0; m < k; ++m)
            for (std::size_t i = 0; i < k; ++i)
                if (reach[i][m])
                    for (std::size_t j = 0; j < k; ++j)
                        if (reach[m][j]) reach[i][j] = true;

        irreducible_ = true;
        for (std::size_t i = 0; i < k && irreducible_; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (!reach[i][j]) {
                    irreducible_ = false;
                    break;
                }

        // Entropy is positive iff some strongly connected component carries more
        // internal edges than states (otherwise each component is a single cycle or acyclic).
        std::vector<int> comp(k, -1);
        positive_entropy_ = false;
        for (std::size_t i = 0; i < k; ++i) {
            if (comp[i] >= 0 || !reach[i][i]) continue;
            long long states = 0, internal = 0;
            std::vector<std::size_t> members;
            for (std::size_t j = 0; j < k; ++j)
                if (j == i || (reach[i][j] && reach[j][i])) {
                    comp[j] = static_cast<int>(i);
                    members.push_back(j);
                    ++states;
                }
            for (auto a : members)
                for (auto b : members) internal += matrix_(a, b);
            if (internal > states) positive_entropy_ = true;
        }

        period_ = 0;
        if (irreducible_) {
            std::vector<long long> level(k, -1);
            std::vector<std::size_t> queue{0};
            level[0] = 0;
            for (std::size_t h = 0; h < queue.size(); ++h) {
                auto s = queue[h];
                for (std::size_t t = 0; t < k; ++t)
                    if (matrix_(s, t) > 0 && level[t] < 0) {
                        level[t] = level[s] + 1;
                        queue.push_back(t);
                    }
            }
            long long g = 0;
            for (std::size_t s = 0; s < k; ++s)
                for (std::size_t t = 0; t < k; ++t)
                    if (matrix_(s, t) > 0) g = std::gcd(g, std::llabs(level[s] + 1 - level[t]));
            period_ = static_cast<std::size_t>(g);
        }
        primitive_ = irreducible_ && period_ == 1;

        has_past_.assign(k, false);
        has_future_.assign(k, false);
        for (std::size_t c = 0; c < k; ++c) {
            if (!reach[c][c]) continue;
            for (std::size_t s = 0; s < k; ++s) {
                if (s == c || reach[c][s]) has_past_[s] = true;
                if (s == c || reach[s][c]) has_future_[s] = true;
            }
        }
        all_essential_ = true;
        for (std::size_t s = 0; s < k; ++s)
            if (!has_past_[s] || !has_future_[s]) all_essential_ = false;
    }

    NonnegIntMatrix matrix_;
    std::vector<EdgeInfo> edges_;
    std::vector<std::vector<Edge>> out_;
    std::vector<std::vector<Edge>> in_;
    std::vector<Edge> first_edge_;
    bool irreducible_ = false;
    bool primitive_ = false;
    bool positive_entropy_ = false;
    std::size_t period_ = 0;
    std::vector<bool> has_past_;
    std::vector<bool> has_future_;
    bool all_essential_ = false;
    std::shared_ptr<const ProductFactors> factors_;
};

inline ShiftPtr build_edge_shift(NonnegIntMatrix matrix) { return EdgeShift::build(std::move(matrix)); }

ShiftPtr kronecker_product(const ShiftPtr& a, const ShiftPtr& b);

namespace detail {
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > std::numeric_limits<std::uint64_t>::max() / b ? std::numeric_limits<std::uint64_t>::max() : a * b;
}
}  // namespace detail

/// Bijection between admissible words of a fixed length and 0..size()-1,
/// matching lexicographic order on edge indices. Counts saturate at 2^64-1.
class WordIndexer {
public:
    WordIndexer(ShiftPtr shift, std::size_t length) : shift_(std::move(shift)), length_(length) {
        const std::size_t k = shift_->num_states();
        const std::size_t ne = shift_->num_edges();
        // paths_[r][s]: number of paths of r edges starting at state s.
        paths_.assign(length_ + 1, std::vector<std::uint64_t>(k, 0));
        for (std::size_t s = 0; s < k; ++s) paths_[0][s] = 1;
        for (std::size_t r = 1; r <= length_; ++r)
            for (std::size_t s = 0; s < k; ++s) {
                std::uint64_t acc = 0;
                for (Edge e : shift_->out_edges(static_cast<State>(s)))
                    acc = detail::sat_add(acc, paths_[r - 1][shift_->target(e)]);
                paths_[r][s] = acc;
            }
        if (length_ == 0) {
            size_ = 1;
            return;
        }
        // offset_[r][e]: rank contribution of choosing e with r edges still to follow,
        // counted among edges that share e's source (or all edges at position 0).
        offset_.assign(length_, std::vector<std::uint64_t>(ne, 0));
        for (std::size_t r = 0; r < length_; ++r)
            for (std::size_t s = 0; s < k; ++s) {
                std::uint64_t acc = 0;
                for (Edge e : shift_->out_edges(static_cast<State>(s))) {
                    offset_[r][e] = acc;
                    acc = detail::sat_add(acc, paths_[r][shift_->target(e)]);
                }
            }
        first_.assign(ne, 0);
        std::uint64_t acc = 0;
        for (Edge e = 0; e < ne; ++e) {
            first_[e] = acc;
            acc = detail::sat_add(acc, paths_[length_ - 1][shift_->target(e)]);
        }
        size_ = acc;
    }

    const ShiftPtr& shift() const noexcept { return shift_; }
    std::size_t length() const noexcept { return length_; }
    std::uint64_t size() const noexcept { return size_; }

    /// Number of paths of `r` edges starting at state `s`.
    std::uint64_t paths_from(State s, std::size_t r) const { return paths_.at(r).at(s); }

    /// Rank of an admissible word of exactly length() edges (not validated).
    std::uint64_t rank(std::span<const Edge> w) const {
        if (length_ == 0) return 0;
        std::uint64_t r = first_[w[0]];
        for (std::size_t i = 1; i < length_; ++i) r += offset_[length_ - 1 - i][w[i]];
        return r;
    }

    Word unrank(std::uint64_t r) const {
        Word w;
        w.reserve(length_);
        for (std::size_t i = 0; i < length_; ++i) {
            const std::size_t rem = length_ - 1 - i;
            std::span<const Edge> choices;
            std::vector<Edge> all;
            if (i == 0) {
                all.resize(shift_->num_edges());
                std::iota(all.begin(), all.end(), Edge{0});
                choices = all;
            } else {
                choices = shift_->out_edges(shift_->target(w.back()));
            }
            for (Edge e : choices) {
                std::uint64_t n = paths_[rem][shift_->target(e)];
                if (r < n) {
                    w.push_back(e);
                    break;
                }
                r -= n;
            }
        }
        return w;
    }

    /// Visit every admissible word in rank order: f(const Word&, rank).
    /// If f returns bool, returning false stops the walk.
    template <typename F>
    void for_each(F&& f) const {
        auto visit = [&f](const Word& w, std::uint64_t r) {
            if constexpr (std::is_same_v<std::invoke_result_t<F&, const Word&, std::uint64_t>, bool>)
                return f(w, r);
            else
                return (f(w, r), true);
        };
        Word w;
        if (length_ == 0) {
            visit(w, std::uint64_t{0});
            return;
        }
        w.reserve(length_);
        std::uint64_t rank = 0;
        const std::size_t ne = shift_->num_edges();
        std::vector<std::size_t> pos(length_, 0);
        std::size_t depth = 0;
        pos[0] = 0;
        while (true) {
            std::span<const Edge> choices;
            if (depth == 0) {
                if (pos[0] >= ne) break;
            } else {
                choices = shift_->out_edges(shift_->target(w[depth - 1]));
                if (pos[depth] >= choices.size()) {
                    --depth;
                    w.pop_back();
                    ++pos[depth];
                    continue;
                }
            }
            Edge e = depth == 0 ? static_cast<Edge>(pos[0]) : choices[pos[depth]];
            if (depth + 1 == length_) {
                w.push_back(e);
                if (!visit(w, rank)) return;
                ++rank;
                w.pop_back();
                ++pos[depth];
            } else {
                w.push_back(e);
                ++depth;
                pos[depth] = 0;
            }
        }
    }

private:
    ShiftPtr shift_;
    std::size_t length_;
    std::uint64_t size_ = 0;
    std::vector<std::vector<std::uint64_t>> paths_;
    std::vector<std::vector<std::uint64_t>> offset_;
    std::vector<std::uint64_t> first_;
};

/// P_X(n): number of admissible words of length n, with P_X(0) = 1.
inline BigInt count_words(const EdgeShift& shift, std::size_t n) {
    if (n == 0) return 1;
    ZMatrix p = shift.matrix().to_zmatrix().pow(static_cast<unsigned>(n));
    BigInt total = 0;
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) total += p(i, j);
    return total;
}

/// Kronecker product A (x) B; product state (i, j) has index i * |B| + j and the
/// copy index of product edge (e, f) is copy(e) * B[s(f)][t(f)] + copy(f).
inline ShiftPtr kronecker_product(const ShiftPtr& a, const ShiftPtr& b) {
    const std::size_t ka = a->num_states(), kb = b->num_states();
    std::vector<std::vector<long long>> m(ka * kb, std::vector<long long>(ka * kb, 0));
    for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t j = 0; j < kb; ++j)
            for (std::size_t i2 = 0; i2 < ka; ++i2)
                for (std::size_t j2 = 0; j2 < kb; ++j2)
                    m[i * kb + j][i2 * kb + j2] = a->matrix()(i, i2) * b->matrix()(j, j2);
    auto prod = std::shared_ptr<EdgeShift>(new EdgeShift(NonnegIntMatrix(std::move(m))));
    auto f = std::make_shared<ProductFactors>();
    f->left = a;
    f->right = b;
    f->join.assign(a->num_edges() * b->num_edges(), 0);
    f->split.assign(prod->num_edges(), {0, 0});
    for (Edge e = 0; e < a->num_edges(); ++e)
        for (Edge g = 0; g < b->num_edges(); ++g) {
            const auto& ea = a->edge(e);
            const auto& eb = b->edge(g);
            State s = static_cast<State>(ea.source * kb + eb.source);
            State t = static_cast<State>(ea.target * kb + eb.target);
            auto copy = static_cast<std::uint32_t>(ea.copy * b->matrix()(eb.source, eb.target) + eb.copy);
            Edge pe = prod->edge_index(s, t, copy);
            f->join[e * b->num_edges() + g] = pe;
            f->split[pe] = {e, g};
        }
    prod->factors_ = std::move(f);
    return prod;
}

/// A shift that is a Kronecker product but was built without a recorded factorization
/// (e.g. a restricted subsystem) gets one here, after checking the matrix.
inline ShiftPtr with_factorization(const ShiftPtr& shift, const ShiftPtr& left, const ShiftPtr& right) {
    auto prod = kronecker_product(left, right);
    if (!prod->same_system(*shift)) throw ShiftMismatch("matrix is not the Kronecker product of the given factors");
    return prod;
}

struct TransposedShift {
    ShiftPtr shift;
    std::vector<Edge> edge_map;  // edge of A -> reversed edge of A^T
};

/// X_{A^T} with the canonical bijection (i -> j, copy c) |-> (j -> i, copy c).
inline TransposedShift transpose_shift(const ShiftPtr& shift) {
    auto t = build_edge_shift(shift->matrix().transpose());
    std::vector<Edge> map(shift->num_edges());
    for (Edge e = 0; e < shift->num_edges(); ++e) {
        const auto& info = shift->edge(e);
        map[e] = t->edge_index(info.target, info.source, info.copy);
    }
    return {t, std::move(map)};
}

}  // namespace sftlab
