#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "commdeg/errors.hpp"

namespace commdeg {

/// Element id inside a fixed group; 0 is always the identity.
using Elem = std::uint16_t;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group given by its full Cayley table. Immutable after
/// construction and safe to share across threads.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
public:
    static constexpr std::size_t kDefaultOrderCap = 10000;

    FiniteGroup(std::size_t order, std::vector<Elem> table, std::string name,
                std::vector<std::string> generator_labels = {})
        : order_(order), mul_(std::move(table)), name_(std::move(name)),
          generator_labels_(std::move(generator_labels)) {
        validate();
        inv_.resize(order_);
        for (std::size_t x = 0; x < order_; ++x) {
            bool found = false;
            for (std::size_t y = 0; y < order_; ++y) {
                if (mul(static_cast<Elem>(x), static_cast<Elem>(y)) == 0) {
                    inv_[x] = static_cast<Elem>(y);
                    found = true;
                    break;
                }
            }
            if (!found) throw ValidationError("element " + std::to_string(x) + " has no inverse");
        }
        hash_ = compute_hash();
    }

    std::size_t order() const { return order_; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& generator_labels() const { return generator_labels_; }
    const std::vector<Elem>& table() const { return mul_; }

    Elem mul(Elem a, Elem b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
    Elem inv(Elem a) const { return inv_[a]; }
    Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }
    /// [x,y] = x y x^{-1} y^{-1}.
    Elem commutator(Elem x, Elem y) const { return mul(mul(mul(x, y), inv(x)), inv(y)); }

    Elem power(Elem x, long long e) const {
        if (e < 0) return power(inv(x), -e);
        Elem r = 0, base = x;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    unsigned element_order(Elem x) const {
        unsigned o = 1;
        Elem c = x;
        while (c != 0) {
            c = mul(c, x);
            ++o;
        }
        return o;
    }

    unsigned exponent() const {
        unsigned e = 1;
        for (std::size_t x = 0; x < order_; ++x)
            e = std::lcm(e, element_order(static_cast<Elem>(x)));
        return e;
    }

    void check_element(Elem x) const {
        if (static_cast<std::size_t>(x) >= order_)
            throw ElementOutOfRange("element id " + std::to_string(x) + " out of range for group of order " +
                                    std::to_string(order_));
    }

    /// FNV-1a over order and table; used as a content key for caches and for
    /// content-identity tests between separately built copies of a group.
    std::uint64_t content_hash() const { return hash_; }

private:
    std::uint64_t compute_hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        auto feed = [&h](std::uint64_t v) {
            for (int i = 0; i < 8; ++i) {
                h ^= (v >> (8 * i)) & 0xff;
                h *= 1099511628211ULL;
            }
        };
        feed(order_);
        for (Elem v : mul_) feed(v);
        return h;
    }

    void validate() const {
        if (order_ == 0) throw ValidationError("group order must be positive");
        if (order_ > kDefaultOrderCap)
            throw OrderOverflow("order " + std::to_string(order_) + " exceeds cap " +
                                std::to_string(kDefaultOrderCap));
        if (mul_.size() != order_ * order_) throw ValidationError("table size does not match order");
        for (Elem v : mul_)
            if (static_cast<std::size_t>(v) >= order_) throw ValidationError("table entry out of range");

        std::vector<bool> seen(order_);
        for (std::size_t r = 0; r < order_; ++r) {
            std::fill(seen.begin(), seen.end(), false);
            for (std::size_t c = 0; c < order_; ++c) {
                Elem v = mul_[r * order_ + c];
                if (seen[v]) throw ValidationError("row " + std::to_string(r) + " is not a permutation");
                seen[v] = true;
            }
        }
        for (std::size_t c = 0; c < order_; ++c) {
            std::fill(seen.begin(), seen.end(), false);
            for (std::size_t r = 0; r < order_; ++r) {
                Elem v = mul_[r * order_ + c];
                if (seen[v]) throw ValidationError("column " + std::to_string(c) + " is not a permutation");
                seen[v] = true;
            }
        }
        for (std::size_t x = 0; x < order_; ++x) {
            if (mul_[x] != x || mul_[x * order_] != x)
                throw ValidationError("element 0 is not a two-sided identity");
        }

        // Full associativity check is cubic; above 512 elements fall back to a
        // fixed-seed random sample. Constructor-built tables are associative by
        // construction, so the sampled check guards file ingestion.
        auto at = [this](std::size_t a, std::size_t b) { return mul_[a * order_ + b]; };
        if (order_ <= 512) {
            for (std::size_t a = 0; a < order_; ++a)
                for (std::size_t b = 0; b < order_; ++b)
                    for (std::size_t c = 0; c < order_; ++c)
                        if (at(at(a, b), c) != at(a, at(b, c)))
                            throw ValidationError("associativity fails");
        } else {
            std::mt19937_64 rng(0xC0FFEEULL);
            std::uniform_int_distribution<std::size_t> pick(0, order_ - 1);
            for (int i = 0; i < 10000; ++i) {
                std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
                if (at(at(a, b), c) != at(a, at(b, c)))
                    throw ValidationError("associativity fails (sampled)");
            }
        }
    }

    std::size_t order_;
    std::uint64_t hash_ = 0;
    std::vector<Elem> mul_;
    std::vector<Elem> inv_;
    std::string name_;
    std::vector<std::string> generator_labels_;
};

inline GroupPtr make_group(std::size_t order, std::vector<Elem> table, std::string name,
                           std::vector<std::string> generator_labels = {}) {
    return std::make_shared<FiniteGroup>(order, std::move(table), std::move(name),
                                         std::move(generator_labels));
}

/// Content identity: the same group object, or equal tables built twice.
inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
    return a.get() == b.get() ||
           (a->order() == b->order() && a->content_hash() == b->content_hash());
}

/// A subgroup, stored as the strictly sorted list of its element ids.
class Subgroup {
public:
    Subgroup(GroupPtr parent, std::vector<Elem> elements)
        : parent_(std::move(parent)), elems_(std::move(elements)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        if (elems_.empty() || elems_[0] != 0)
            throw ValidationError("subgroup must contain the identity");
        for (Elem a : elems_) {
            parent_->check_element(a);
            if (!contains(parent_->inv(a))) throw ValidationError("subgroup not closed under inverse");
            for (Elem b : elems_)
                if (!contains(parent_->mul(a, b))) throw ValidationError("subgroup not closed under product");
        }
        if (parent_->order() % elems_.size() != 0)
            throw ValidationError("subgroup size does not divide group order");
    }

    const GroupPtr& parent() const { return parent_; }
    const std::vector<Elem>& elements() const { return elems_; }
    std::size_t order() const { return elems_.size(); }
    bool contains(Elem x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }
    bool is_whole_group() const { return elems_.size() == parent_->order(); }

    bool operator==(const Subgroup& o) const {
        return parent_.get() == o.parent_.get() && elems_ == o.elems_;
    }
    bool same_content(const Subgroup& o) const {
        return elems_ == o.elems_ && parent_->content_hash() == o.parent_->content_hash();
    }

    static Subgroup whole(const GroupPtr& g) {
        std::vector<Elem> all(g->order());
        std::iota(all.begin(), all.end(), Elem{0});
        return Subgroup(g, std::move(all));
    }

    static Subgroup trivial(const GroupPtr& g) { return Subgroup(g, {0}); }

private:
    GroupPtr parent_;
    std::vector<Elem> elems_;
};

/// Closure of a generating set, returned sorted.
inline std::vector<Elem> closure(const FiniteGroup& g, const std::vector<Elem>& gens) {
    std::vector<bool> in(g.order(), false);
    std::vector<Elem> members{0};
    in[0] = true;
    std::vector<Elem> frontier{0};
    for (Elem x : gens) {
        g.check_element(x);
        if (!in[x]) {
            in[x] = true;
            members.push_back(x);
            frontier.push_back(x);
        }
    }
    while (!frontier.empty()) {
        std::vector<Elem> next;
        for (Elem a : frontier) {
            for (std::size_t i = 0; i < members.size(); ++i) {
                Elem b = members[i];
                for (Elem c : {g.mul(a, b), g.mul(b, a)}) {
                    if (!in[c]) {
                        in[c] = true;
                        members.push_back(c);
                        next.push_back(c);
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(members.begin(), members.end());
    return members;
}

inline Subgroup generated_subgroup(const GroupPtr& g, const std::vector<Elem>& gens) {
    return Subgroup(g, closure(*g, gens));
}

/// C_K(x) = { k in K : kx = xk }.
inline Subgroup centralizer(const Subgroup& k, Elem x) {
    const FiniteGroup& g = *k.parent();
    g.check_element(x);
    std::vector<Elem> out;
    for (Elem e : k.elements())
        if (g.mul(e, x) == g.mul(x, e)) out.push_back(e);
    return Subgroup(k.parent(), std::move(out));
}

/// C_K(H) = { k in K : hk = kh for all h in H }.
inline Subgroup subgroup_centralizer(const Subgroup& k, const Subgroup& h) {
    if (!same_group(k.parent(), h.parent()))
        throw ParentMismatch("subgroups do not share a parent group");
    const FiniteGroup& g = *k.parent();
    std::vector<Elem> out;
    for (Elem e : k.elements()) {
        bool ok = true;
        for (Elem x : h.elements()) {
            if (g.mul(e, x) != g.mul(x, e)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(e);
    }
    return Subgroup(k.parent(), std::move(out));
}

/// Cl_K(x) = { kxk^{-1} : k in K }, sorted.
inline std::vector<Elem> conjugacy_class(const Subgroup& k, Elem x) {
    const FiniteGroup& g = *k.parent();
    g.check_element(x);
    std::vector<bool> in(g.order(), false);
    std::vector<Elem> out;
    for (Elem e : k.elements()) {
        Elem c = g.conj(e, x);
        if (!in[c]) {
            in[c] = true;
            out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Full conjugacy-class partition in canonical order: classes sorted by
/// (size, minimal element id); the identity's class is always first.
struct ConjClasses {
    std::vector<std::vector<Elem>> classes;
    std::vector<int> class_of; // element id -> class index

    std::size_t k() const { return classes.size(); }
    Elem representative(std::size_t i) const { return classes[i][0]; }
};

inline ConjClasses conjugacy_classes(const FiniteGroup& g) {
    std::vector<bool> seen(g.order(), false);
    std::vector<std::vector<Elem>> classes;
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        std::vector<bool> in(g.order(), false);
        std::vector<Elem> cl;
        for (std::size_t e = 0; e < g.order(); ++e) {
            Elem c = g.conj(static_cast<Elem>(e), static_cast<Elem>(x));
            if (!in[c]) {
                in[c] = true;
                cl.push_back(c);
            }
        }
        std::sort(cl.begin(), cl.end());
        for (Elem y : cl) seen[y] = true;
        classes.push_back(std::move(cl));
    }
    std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a[0] < b[0];
    });
    ConjClasses out;
    out.class_of.assign(g.order(), -1);
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (Elem y : classes[i]) out.class_of[y] = static_cast<int>(i);
    out.classes = std::move(classes);
    return out;
}

inline ConjClasses conjugacy_classes(const GroupPtr& g) { return conjugacy_classes(*g); }

/// Subgroup generated by all commutators [x,y].
inline Subgroup derived_subgroup(const GroupPtr& g) {
    std::vector<bool> in(g->order(), false);
    std::vector<Elem> gens;
    for (std::size_t x = 0; x < g->order(); ++x)
        for (std::size_t y = 0; y < g->order(); ++y) {
            Elem c = g->commutator(static_cast<Elem>(x), static_cast<Elem>(y));
            if (!in[c]) {
                in[c] = true;
                gens.push_back(c);
            }
        }
    return Subgroup(g, closure(*g, gens));
}

inline Subgroup center(const GroupPtr& g) {
    std::vector<Elem> out;
    for (std::size_t x = 0; x < g->order(); ++x) {
        bool central = true;
        for (std::size_t y = 0; y < g->order(); ++y) {
            if (g->mul(static_cast<Elem>(x), static_cast<Elem>(y)) !=
                g->mul(static_cast<Elem>(y), static_cast<Elem>(x))) {
                central = false;
                break;
            }
        }
        if (central) out.push_back(static_cast<Elem>(x));
    }
    return Subgroup(g, std::move(out));
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& n) {
    for (std::size_t x = 0; x < g.order(); ++x)
        for (Elem h : n.elements())
            if (!n.contains(g.conj(static_cast<Elem>(x), h))) return false;
    return true;
}

inline bool is_abelian(const FiniteGroup& g) {
    for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = x + 1; y < g.order(); ++y)
            if (g.mul(static_cast<Elem>(x), static_cast<Elem>(y)) !=
                g.mul(static_cast<Elem>(y), static_cast<Elem>(x)))
                return false;
    return true;
}

struct QuotientResult {
    GroupPtr group;
    std::vector<Elem> projection; // parent element id -> coset id
};

/// G/N with cosets relabeled canonically: cosets are ordered by their minimal
/// member, which puts the identity coset at id 0.
inline QuotientResult quotient(const GroupPtr& g, const Subgroup& n) {
    if (!same_group(n.parent(), g)) throw ParentMismatch("subgroup belongs to a different group");
    if (!is_normal(*g, n)) throw NotNormal("subgroup is not normal");
    std::size_t m = g->order() / n.order();
    std::vector<int> coset_of(g->order(), -1);
    std::vector<Elem> reps;
    for (std::size_t x = 0; x < g->order(); ++x) {
        if (coset_of[x] != -1) continue;
        // x has the least id in its coset because ids are scanned in order.
        int id = static_cast<int>(reps.size());
        reps.push_back(static_cast<Elem>(x));
        for (Elem h : n.elements()) coset_of[g->mul(static_cast<Elem>(x), h)] = id;
    }
    std::vector<Elem> table(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            table[a * m + b] = static_cast<Elem>(coset_of[g->mul(reps[a], reps[b])]);
    QuotientResult out;
    out.group = make_group(m, std::move(table), g->name() + "/N");
    out.projection.resize(g->order());
    for (std::size_t x = 0; x < g->order(); ++x) out.projection[x] = static_cast<Elem>(coset_of[x]);
    return out;
}

/// Restriction of a subgroup to a standalone group (elements relabeled in
/// sorted order, so the identity stays at 0).
inline GroupPtr subgroup_as_group(const Subgroup& h, const std::string& name) {
    const auto& es = h.elements();
    const FiniteGroup& g = *h.parent();
    std::vector<Elem> idx(g.order());
    for (std::size_t i = 0; i < es.size(); ++i) idx[es[i]] = static_cast<Elem>(i);
    std::vector<Elem> table(es.size() * es.size());
    for (std::size_t a = 0; a < es.size(); ++a)
        for (std::size_t b = 0; b < es.size(); ++b)
            table[a * es.size() + b] = idx[g.mul(es[a], es[b])];
    return make_group(es.size(), std::move(table), name);
}

struct StructurePredicates {
    bool is_abelian = false;
    bool is_nilpotent = false;
    int nilpotency_class = -1; // -1 when not nilpotent
    bool is_solvable = false;
    bool is_supersolvable = false;
    bool is_cn_group = false;
};

namespace detail {

inline std::vector<Elem> upper_central_step(const FiniteGroup& g, const std::vector<bool>& zi) {
    std::vector<Elem> out;
    for (std::size_t x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (std::size_t y = 0; y < g.order(); ++y) {
            if (!zi[g.commutator(static_cast<Elem>(x), static_cast<Elem>(y))]) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(static_cast<Elem>(x));
    }
    return out;
}

/// Depth-first search for a series 1 = A_0 < A_1 < ... < A_r = G with every
/// A_i normal in G and cyclic factors A_{i+1}/A_i. `current` is normal in G
/// by the recursion invariant. Throws when the node budget runs out
/// (inconclusive, not "false").
inline bool supersolvable_search(const GroupPtr& g, const std::vector<Elem>& current,
                                 std::set<std::vector<Elem>>& visited, long long& budget) {
    if (current.size() == g->order()) return true;
    if (--budget < 0) throw SearchBudgetExceeded("supersolvability search budget exhausted");
    if (!visited.insert(current).second) return false;

    auto q = quotient(g, Subgroup(g, current));

    // Candidate next terms: <current, x>, one x per coset of current.
    std::vector<bool> coset_done(q.group->order(), false);
    coset_done[0] = true;
    std::set<std::vector<Elem>> extensions;
    for (std::size_t x = 0; x < g->order(); ++x) {
        if (coset_done[q.projection[x]]) continue;
        coset_done[q.projection[x]] = true;
        std::vector<Elem> gens = current;
        gens.push_back(static_cast<Elem>(x));
        extensions.insert(closure(*g, gens));
    }
    // Prefer small extensions: cyclic factors of prime order come first.
    std::vector<std::vector<Elem>> order_sorted(extensions.begin(), extensions.end());
    std::sort(order_sorted.begin(), order_sorted.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size() || (a.size() == b.size() && a < b); });
    for (const auto& ext : order_sorted) {
        if (--budget < 0) throw SearchBudgetExceeded("supersolvability search budget exhausted");
        Subgroup m(g, ext);
        if (!is_normal(*g, m)) continue;
        // factor M/current cyclic <=> its image in the quotient is generated
        // by one element
        std::vector<Elem> img;
        {
            std::vector<bool> seen(q.group->order(), false);
            for (Elem e : ext)
                if (!seen[q.projection[e]]) {
                    seen[q.projection[e]] = true;
                    img.push_back(q.projection[e]);
                }
        }
        std::size_t msize = img.size();
        bool cyclic = false;
        for (Elem y : img)
            if (q.group->element_order(y) == msize) {
                cyclic = true;
                break;
            }
        if (!cyclic) continue;
        if (supersolvable_search(g, ext, visited, budget)) return true;
    }
    return false;
}

} // namespace detail

/// Decides abelian/nilpotent/solvable/supersolvable/CN. Nilpotency uses the
/// upper central series, solvability the derived series; supersolvability is
/// a bounded search over normal series with cyclic factors.
inline StructurePredicates structure_predicates(const GroupPtr& g,
                                                long long supersolvable_budget = 1000000) {
    StructurePredicates out;
    out.is_abelian = is_abelian(*g);

    // upper central series
    {
        std::vector<bool> zi(g->order(), false);
        zi[0] = true;
        std::size_t size = 1;
        int cls = 0;
        while (true) {
            if (size == g->order()) {
                out.is_nilpotent = true;
                out.nilpotency_class = cls;
                break;
            }
            auto next = detail::upper_central_step(*g, zi);
            if (next.size() == size) break; // stabilized below G
            std::fill(zi.begin(), zi.end(), false);
            for (Elem e : next) zi[e] = true;
            size = next.size();
            ++cls;
        }
    }

    // derived series
    {
        GroupPtr cur = g;
        Subgroup d = derived_subgroup(cur);
        std::size_t prev = g->order();
        while (true) {
            if (d.order() == 1) {
                out.is_solvable = true;
                break;
            }
            if (d.order() == prev) break;
            prev = d.order();
            cur = subgroup_as_group(d, "derived");
            d = derived_subgroup(cur);
        }
    }

    {
        std::set<std::vector<Elem>> visited;
        long long budget = supersolvable_budget;
        out.is_supersolvable = detail::supersolvable_search(g, {0}, visited, budget);
    }

    {
        Subgroup whole = Subgroup::whole(g);
        out.is_cn_group = true;
        for (std::size_t x = 0; x < g->order(); ++x) {
            if (!is_normal(*g, centralizer(whole, static_cast<Elem>(x)))) {
                out.is_cn_group = false;
                break;
            }
        }
    }
    return out;
}

/// Every subgroup of g, as sorted element lists. Built by closing the lattice
/// upward from cyclic subgroups; intended for catalog-scale groups.
inline std::vector<std::vector<Elem>> all_subgroups(const GroupPtr& g, std::size_t max_order_cap = 0) {
    std::set<std::vector<Elem>> known;
    known.insert({0});
    std::vector<std::vector<Elem>> frontier{{0}};
    while (!frontier.empty()) {
        std::vector<std::vector<Elem>> next;
        for (const auto& h : frontier) {
            if (max_order_cap && h.size() >= max_order_cap) continue;
            std::vector<bool> in(g->order(), false);
            for (Elem e : h) in[e] = true;
            for (std::size_t x = 0; x < g->order(); ++x) {
                if (in[x]) continue;
                std::vector<Elem> gens = h;
                gens.push_back(static_cast<Elem>(x));
                auto cl = closure(*g, gens);
                if (known.insert(cl).second) next.push_back(std::move(cl));
            }
        }
        frontier = std::move(next);
    }
    return {known.begin(), known.end()};
}

} // namespace commdeg
