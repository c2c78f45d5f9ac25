#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "commdeg/errors.hpp"
#include "commdeg/group.hpp"
#include "commdeg/rational.hpp"

namespace commdeg {

/// One syllable x_i^e of a free-group word (1-based generator index,
/// nonzero exponent).
struct Syllable {
    unsigned generator; // >= 1
    long long exponent; // != 0

    bool operator==(const Syllable& o) const {
        return generator == o.generator && exponent == o.exponent;
    }
};

/// A free-group word in reduced syllable form: adjacent syllables on the same
/// generator are merged at construction and zero exponents dropped.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Syllable> sylls) {
        for (const Syllable& s : sylls) {
            if (s.generator < 1) throw ParseError("generator index must be >= 1", 0);
            if (s.exponent == 0) throw ParseError("zero exponent", 0);
            push(s);
        }
    }

    const std::vector<Syllable>& syllables() const { return sylls_; }
    bool empty() const { return sylls_.empty(); }

    /// Largest generator index occurring in the word (0 for the empty word).
    unsigned arity() const {
        unsigned a = 0;
        for (const Syllable& s : sylls_) a = std::max(a, s.generator);
        return a;
    }

    std::string format() const {
        std::string out;
        for (const Syllable& s : sylls_) {
            if (!out.empty()) out += ' ';
            out += "x" + std::to_string(s.generator);
            if (s.exponent != 1) out += "^" + std::to_string(s.exponent);
        }
        return out;
    }

    bool operator==(const Word& o) const { return sylls_ == o.sylls_; }

private:
    void push(Syllable s) {
        if (!sylls_.empty() && sylls_.back().generator == s.generator) {
            sylls_.back().exponent += s.exponent;
            if (sylls_.back().exponent == 0) sylls_.pop_back();
            return;
        }
        sylls_.push_back(s);
    }

    std::vector<Syllable> sylls_;
};

/// Grammar: word := term+ ; term := 'x' INT ('^' SIGNED_INT)? with terms
/// separated by whitespace; a missing exponent means +1.
inline Word parse_word(const std::string& text) {
    std::vector<Syllable> sylls;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != 'x') throw ParseError("expected 'x'", i);
        ++i;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) throw ParseError("expected generator index", i);
        unsigned long gen = std::stoul(text.substr(start, i - start));
        if (gen < 1) throw ParseError("generator index must be >= 1", start);
        long long exp = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            std::size_t estart = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == estart || (i == estart + 1 && !std::isdigit(static_cast<unsigned char>(text[estart]))))
                throw ParseError("expected exponent", estart);
            exp = std::stoll(text.substr(estart, i - estart));
            if (exp == 0) throw ParseError("zero exponent", estart);
        }
        if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            throw ParseError("unexpected character", i);
        sylls.push_back(Syllable{static_cast<unsigned>(gen), exp});
        skip_ws();
    }
    if (sylls.empty()) throw ParseError("empty word", 0);
    return Word(std::move(sylls));
}

/// A word in which every occurring generator has exactly two syllables, one
/// with exponent +1 and one with exponent -1.
class AdmissibleWord {
public:
    explicit AdmissibleWord(Word w) : word_(std::move(w)) {
        std::string why;
        if (!check(word_, &why)) throw InvalidSpec("word is not admissible: " + why);
    }

    const Word& word() const { return word_; }

    struct Rejection {
        unsigned generator;
        std::string rule;
    };

    static std::optional<Rejection> why_not(const Word& w) {
        std::map<unsigned, std::vector<long long>> occ;
        for (const Syllable& s : w.syllables()) occ[s.generator].push_back(s.exponent);
        for (const auto& [gen, exps] : occ) {
            if (exps.size() != 2)
                return Rejection{gen, "generator occurs in " + std::to_string(exps.size()) +
                                          " syllables, expected exactly 2"};
            long long lo = std::min(exps[0], exps[1]), hi = std::max(exps[0], exps[1]);
            if (lo != -1 || hi != 1)
                return Rejection{gen, "syllable exponents must be exactly +1 and -1"};
        }
        return std::nullopt;
    }

    static bool check(const Word& w, std::string* why = nullptr) {
        auto r = why_not(w);
        if (r && why) *why = "x" + std::to_string(r->generator) + ": " + r->rule;
        return !r.has_value();
    }

    static AdmissibleWord commutator() {
        return AdmissibleWord(Word({{1, 1}, {2, 1}, {1, -1}, {2, -1}}));
    }

private:
    Word word_;
};

inline std::optional<AdmissibleWord> check_admissible(const Word& w) {
    if (AdmissibleWord::check(w)) return AdmissibleWord(w);
    return std::nullopt;
}

/// Left-to-right evaluation of the word on a tuple of group elements.
inline Elem evaluate(const Word& w, const std::vector<Elem>& tuple, const FiniteGroup& g) {
    if (tuple.size() < w.arity())
        throw ArityMismatch("tuple of length " + std::to_string(tuple.size()) + " for word of arity " +
                            std::to_string(w.arity()));
    for (Elem e : tuple) g.check_element(e);
    Elem v = 0;
    for (const Syllable& s : w.syllables()) v = g.mul(v, g.power(tuple[s.generator - 1], s.exponent));
    return v;
}

/// Exact fiber of the word map over G^arity, indexed by element id. Tuples
/// beyond the word's arity are free coordinates and scale every count by
/// |G|^{n - arity}. Enumeration splits on the first coordinate; per-worker
/// tallies are integers merged by element id, so any worker count produces
/// the same result.
inline std::vector<BigInt> word_fiber(const Word& w, const FiniteGroup& g, unsigned n,
                                      const BigInt& budget = BigInt(1000000000), unsigned jobs = 1) {
    unsigned arity = w.arity();
    if (n < arity) throw ArityMismatch("tuple length below word arity");
    if (big_pow(BigInt(g.order()), n) > budget)
        throw BudgetExceeded("|G|^n exceeds enumeration budget");

    std::size_t m = g.order();
    auto count_range = [&](std::size_t first_lo, std::size_t first_hi, std::vector<std::uint64_t>& out) {
        std::vector<Elem> tuple(std::max(arity, 1u), 0);
        // odometer over coordinates 1..arity-1 for each fixed first coordinate
        for (std::size_t first = first_lo; first < first_hi; ++first) {
            tuple.assign(std::max(arity, 1u), 0);
            tuple[0] = static_cast<Elem>(first);
            while (true) {
                Elem v = 0;
                for (const Syllable& s : w.syllables())
                    v = g.mul(v, g.power(tuple[s.generator - 1], s.exponent));
                ++out[v];
                std::size_t i = 1;
                for (; i < arity; ++i) {
                    if (++tuple[i] < m) break;
                    tuple[i] = 0;
                }
                if (i >= arity) break;
            }
        }
    };

    std::vector<std::vector<std::uint64_t>> tallies;
    if (arity == 0) {
        // empty word: every tuple evaluates to the identity
        std::vector<BigInt> fiber(m, BigInt(0));
        fiber[0] = big_pow(BigInt(g.order()), n);
        return fiber;
    }
    if (jobs <= 1 || m < 2 * jobs) {
        tallies.emplace_back(m, 0);
        count_range(0, m, tallies[0]);
    } else {
        tallies.assign(jobs, std::vector<std::uint64_t>(m, 0));
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < jobs; ++t) {
            std::size_t lo = m * t / jobs, hi = m * (t + 1) / jobs;
            threads.emplace_back([&, t, lo, hi] { count_range(lo, hi, tallies[t]); });
        }
        for (auto& th : threads) th.join();
    }

    BigInt scale = big_pow(BigInt(g.order()), n - arity);
    std::vector<BigInt> fiber(m, BigInt(0));
    for (const auto& tally : tallies)
        for (std::size_t e = 0; e < m; ++e) fiber[e] += BigInt(tally[e]);
    for (auto& v : fiber) v *= scale;
    return fiber;
}

/// zeta^omega_n(g): number of n-tuples with omega(tuple) = g.
inline BigInt count_solutions(const AdmissibleWord& w, const FiniteGroup& g, Elem target, unsigned n,
                              const BigInt& budget = BigInt(1000000000), unsigned jobs = 1) {
    g.check_element(target);
    return word_fiber(w.word(), g, n, budget, jobs)[target];
}

/// Deterministic random admissible word with arity <= max_arity: a shuffled
/// interleaving of one +1 and one -1 syllable per generator, re-drawn until
/// the reduced form is still admissible.
template <typename Rng>
AdmissibleWord random_admissible_word(Rng& rng, unsigned max_arity = 3) {
    std::uniform_int_distribution<unsigned> pick_arity(1, max_arity);
    while (true) {
        unsigned a = pick_arity(rng);
        std::vector<Syllable> sylls;
        for (unsigned i = 1; i <= a; ++i) {
            sylls.push_back({i, 1});
            sylls.push_back({i, -1});
        }
        for (std::size_t i = sylls.size(); i > 1; --i) {
            std::uniform_int_distribution<std::size_t> pick(0, i - 1);
            std::swap(sylls[i - 1], sylls[pick(rng)]);
        }
        Word w(sylls);
        if (w.arity() == a && AdmissibleWord::check(w)) return AdmissibleWord(w);
    }
}

struct FiberDistribution {
    std::vector<BigInt> counts;       // by element id
    Rational max_deviation;           // max_g |zeta(g)/|G|^n - 1/|G||
    Rational coverage;                // |image| / |G|
    std::size_t image_size = 0;
};

inline FiberDistribution fiber_distribution(const AdmissibleWord& w, const FiniteGroup& g, unsigned n,
                                            const BigInt& budget = BigInt(1000000000),
                                            unsigned jobs = 1) {
    FiberDistribution out;
    out.counts = word_fiber(w.word(), g, n, budget, jobs);
    BigInt total = big_pow(BigInt(g.order()), n);
    Rational uniform(1, static_cast<long long>(g.order()));
    out.max_deviation = Rational(0);
    for (std::size_t e = 0; e < g.order(); ++e) {
        if (out.counts[e] > 0) ++out.image_size;
        Rational dev = (Rational(out.counts[e], total) - uniform).abs();
        if (dev > out.max_deviation) out.max_deviation = dev;
    }
    out.coverage = Rational(BigInt(out.image_size), BigInt(g.order()));
    return out;
}

} // namespace commdeg
