#ifndef RAUZY_ADIC_HPP
#define RAUZY_ADIC_HPP

// Directive sequences over a substitution set and their limit points.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "rauzy/core.hpp"
#include "rauzy/parse.hpp"
#include "rauzy/random.hpp"

namespace rauzy {

class SubstitutionSet {
public:
    SubstitutionSet(Alphabet alphabet, std::vector<Substitution> subs)
        : alphabet_(std::move(alphabet)), subs_(std::move(subs)) {
        if (subs_.empty()) throw input_error("substitution set is empty");
        for (const auto& s : subs_)
            if (s.alphabet_size() != alphabet_.size()) throw input_error("substitution '" + s.name() + "' uses a different alphabet");
        const auto& m = subs_.front().incidence_matrix();
        if (std::all_of(subs_.begin(), subs_.end(), [&](const auto& s) { return s.incidence_matrix() == m; }))
            shared_ = m;
    }

    explicit SubstitutionSet(SubstitutionFile file)
        : SubstitutionSet(std::move(file.alphabet), std::move(file.substitutions)) {}

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
    std::size_t size() const noexcept { return subs_.size(); }
    const Substitution& operator[](std::size_t i) const { return subs_.at(i); }
    const std::vector<Substitution>& substitutions() const noexcept { return subs_; }

    /// Present iff every substitution has the same incidence matrix.
    const std::optional<IntMatrix>& shared_matrix() const noexcept { return shared_; }

private:
    Alphabet alphabet_;
    std::vector<Substitution> subs_;
    std::optional<IntMatrix> shared_;
};

// ---------------------------------------------------------------------------

/// An infinite (or explicitly finite) sequence of indices into a SubstitutionSet.
class DirectiveSequence {
public:
    struct Explicit {
        std::vector<std::size_t> items;
    };
    struct Periodic {
        std::vector<std::size_t> preperiod;
        std::vector<std::size_t> period;
    };
    struct Random {
        std::uint64_t seed;
        std::vector<double> cumulative;  // normalized cumulative weights
    };
    struct Spliced {
        std::shared_ptr<const DirectiveSequence> head;
        std::shared_ptr<const DirectiveSequence> tail;
        std::size_t cut;
    };

    static DirectiveSequence explicit_list(std::vector<std::size_t> items) {
        return DirectiveSequence(Explicit{std::move(items)});
    }

    static DirectiveSequence periodic(std::vector<std::size_t> preperiod, std::vector<std::size_t> period) {
        if (period.empty()) throw input_error("period must be nonempty");
        return DirectiveSequence(Periodic{std::move(preperiod), std::move(period)});
    }

    static DirectiveSequence constant(std::size_t index) { return periodic({}, {index}); }

    /// Index n picks substitution i with probability weights[i]; pure in (seed, n).
    static DirectiveSequence random(std::uint64_t seed, std::vector<double> weights) {
        if (weights.empty()) throw input_error("random sequence needs weights");
        double total = 0;
        for (double w : weights) {
            if (!(w >= 0) || !std::isfinite(w)) throw input_error("weights must be nonnegative");
            total += w;
        }
        if (!(total > 0)) throw input_error("weights must not all be zero");
        std::vector<double> cum;
        double acc = 0;
        for (double w : weights) cum.push_back(acc += w / total);
        cum.back() = 1.0;
        return DirectiveSequence(Random{seed, std::move(cum)});
    }

    /// head for indices < cut, tail from cut onward (tail indexed absolutely).
    static DirectiveSequence spliced(const DirectiveSequence& head, const DirectiveSequence& tail, std::size_t cut) {
        return DirectiveSequence(Spliced{std::make_shared<const DirectiveSequence>(head),
                                         std::make_shared<const DirectiveSequence>(tail), cut});
    }

    /// Syntax: "12(21)" preperiod then period, "12" explicit finite list,
    /// "random:SEED[:w1,w2,...]". Digits name substitutions 1-based.
    static DirectiveSequence parse(std::string_view spec, std::size_t set_size) {
        if (spec.empty()) throw input_error("empty sequence spec");
        constexpr std::string_view rnd = "random:";
        if (spec.substr(0, rnd.size()) == rnd) {
            auto rest = spec.substr(rnd.size());
            auto colon = rest.find(':');
            auto seed_text = rest.substr(0, colon);
            std::uint64_t seed = 0;
            auto [p, ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
            if (ec != std::errc() || p != seed_text.data() + seed_text.size() || seed_text.empty())
                throw input_error("bad random seed in '" + std::string(spec) + "'");
            std::vector<double> weights(set_size, 1.0);
            if (colon != std::string_view::npos) {
                weights.clear();
                std::string list(rest.substr(colon + 1));
                std::size_t pos = 0;
                while (pos <= list.size()) {
                    auto comma = list.find(',', pos);
                    if (comma == std::string::npos) comma = list.size();
                    const auto item = list.substr(pos, comma - pos);
                    std::size_t used = 0;
                    double w = 0;
                    try {
                        w = std::stod(item, &used);
                    } catch (const std::exception&) {
                        used = 0;
                    }
                    if (used != item.size() || item.empty()) throw input_error("bad weight '" + item + "'");
                    weights.push_back(w);
                    pos = comma + 1;
                }
                if (weights.size() != set_size) throw input_error("need one weight per substitution");
            }
            return random(seed, std::move(weights));
        }

        auto digits = [&](std::string_view s) {
            std::vector<std::size_t> out;
            for (char c : s) {
                if (c < '1' || c > '9') throw input_error(std::string("bad sequence symbol '") + c + "'");
                const auto i = std::size_t(c - '1');
                if (i >= set_size) throw input_error(std::string("sequence names substitution ") + c + " but the set has " +
                                                     std::to_string(set_size));
                out.push_back(i);
            }
            return out;
        };
        auto open = spec.find('(');
        if (open == std::string_view::npos) return explicit_list(digits(spec));
        if (spec.back() != ')' || spec.find('(', open + 1) != std::string_view::npos)
            throw input_error("bad periodic sequence '" + std::string(spec) + "'");
        auto period = digits(spec.substr(open + 1, spec.size() - open - 2));
        if (period.empty()) throw input_error("empty period in '" + std::string(spec) + "'");
        return periodic(digits(spec.substr(0, open)), std::move(period));
    }

    /// Substitution index at position n (0-based).
    std::size_t operator[](std::size_t n) const { return at(n + offset_); }

    /// Number of terms, for explicit lists.
    std::optional<std::size_t> length() const {
        if (auto e = std::get_if<Explicit>(&mode_)) return e->items.size() > offset_ ? e->items.size() - offset_ : 0;
        if (auto s = std::get_if<Spliced>(&mode_)) {
            auto t = s->tail->length();
            if (!t) return std::nullopt;
            return *t > offset_ ? *t - offset_ : 0;
        }
        return std::nullopt;
    }

    /// The shifted sequence n -> this[n + k].
    DirectiveSequence shifted(std::size_t k) const {
        DirectiveSequence r = *this;
        r.offset_ += k;
        return r;
    }

    std::vector<std::size_t> take(std::size_t n) const {
        std::vector<std::size_t> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = (*this)[i];
        return out;
    }

private:
    using Mode = std::variant<Explicit, Periodic, Random, Spliced>;
    explicit DirectiveSequence(Mode m) : mode_(std::move(m)) {}

    std::size_t at(std::size_t n) const {
        struct Visitor {
            std::size_t n;
            std::size_t operator()(const Explicit& e) const {
                if (n >= e.items.size()) throw input_error("explicit directive sequence exhausted at index " + std::to_string(n));
                return e.items[n];
            }
            std::size_t operator()(const Periodic& p) const {
                if (n < p.preperiod.size()) return p.preperiod[n];
                return p.period[(n - p.preperiod.size()) % p.period.size()];
            }
            std::size_t operator()(const Random& r) const {
                const double x = double(SplitMix64::at(r.seed, n) >> 11) * 0x1.0p-53;
                return std::size_t(std::upper_bound(r.cumulative.begin(), r.cumulative.end(), x) - r.cumulative.begin());
            }
            std::size_t operator()(const Spliced& s) const { return n < s.cut ? (*s.head)[n] : (*s.tail)[n]; }
        };
        return std::visit(Visitor{n}, mode_);
    }

    Mode mode_;
    std::size_t offset_ = 0;
};

// ---------------------------------------------------------------------------

/// f(a) = first letter of sigma(a), indexed by letter - 1.
inline std::vector<Letter> first_letter_map(const Substitution& s) {
    std::vector<Letter> f;
    for (const auto& im : s.images()) f.push_back(im.front());
    return f;
}

/// Smallest k <= horizon with sigma_start ... sigma_{start+k} strictly positive.
inline std::optional<std::size_t> is_primitive_sequence(const DirectiveSequence& seq, const SubstitutionSet& set,
                                                        std::size_t start, std::size_t horizon) {
    if (horizon < 1) throw input_error("horizon must be at least 1");
    if (const auto& m = set.shared_matrix()) {
        if (auto e = primitivity_exponent(*m, horizon + 1)) return *e - 1;
    }
    IntMatrix p = set[seq[start]].incidence_matrix();
    for (std::size_t k = 0; k <= horizon; ++k) {
        if (p.strictly_positive()) return k;
        if (k < horizon) p = p * set[seq[start + k + 1]].incidence_matrix();
    }
    return std::nullopt;
}

/// (a_0, ..., a_n) with a_k = f_{sigma_k}(a_{k+1}).
using LetterChain = std::vector<Letter>;

struct LimitChains {
    std::vector<LetterChain> chains;  // lexicographic order
    std::optional<std::string> warning;

    std::vector<Letter> heads() const {
        std::vector<Letter> h;
        for (const auto& c : chains)
            if (std::find(h.begin(), h.end(), c.front()) == h.end()) h.push_back(c.front());
        return h;
    }
};

inline constexpr std::size_t default_chain_lookahead = 64;

/// Chains of depth n that extend `lookahead` further levels; these are the
/// finite-depth shadows of the infinite chains that define limit points.
inline LimitChains limit_letter_chains(const DirectiveSequence& seq, const SubstitutionSet& set, std::size_t depth,
                                       std::size_t lookahead = default_chain_lookahead) {
    const auto d = set.alphabet_size();
    std::size_t total = depth + lookahead;
    if (auto len = seq.length()) {
        if (*len < depth) throw input_error("directive sequence shorter than requested depth");
        total = std::min(total, *len);
    }

    std::vector<std::vector<Letter>> maps;
    for (std::size_t k = 0; k < total; ++k) maps.push_back(first_letter_map(set[seq[k]]));

    LimitChains out;
    for (std::size_t a = 0; a < d; ++a) {
        LetterChain chain(total + 1);
        chain[total] = letter_at(a);
        for (std::size_t k = total; k-- > 0;) chain[k] = maps[k][index_of(chain[k + 1])];
        chain.resize(depth + 1);
        out.chains.push_back(std::move(chain));
    }
    std::sort(out.chains.begin(), out.chains.end());
    out.chains.erase(std::unique(out.chains.begin(), out.chains.end()), out.chains.end());

    if (depth >= 1 && !seq.length() && !is_primitive_sequence(seq, set, 0, std::max<std::size_t>(depth, 1)))
        out.warning = "sequence not shown primitive within depth " + std::to_string(depth);
    return out;
}

// ---------------------------------------------------------------------------

/// One term P_j of U = s_0..s_{k-1}(P_k) ... s_0(P_1) P_0: the first `length`
/// letters of sigma_j(pivot).
struct TelescopingTerm {
    Letter pivot;
    std::size_t length;
};

inline constexpr std::size_t max_expansion_levels = 4096;

/// Prefix U_n = s_0 s_1 ... s_{n-1}(a_n) of a limit point together with the
/// intermediate words w_j = s_j ... s_{n-1}(a_n) needed to desubstitute it.
class LimitPointExpansion {
public:
    LimitPointExpansion(const DirectiveSequence& seq, const SubstitutionSet& set, std::size_t min_len,
                        std::size_t chain_index = 0)
        : set_(&set) {
        const auto d = set.alphabet_size();

        // Row vector of |s_0 ... s_{k-1}(b)| for every letter b.
        std::vector<std::vector<std::int64_t>> lengths{std::vector<std::int64_t>(d, 1)};
        const auto target = static_cast<std::int64_t>(min_len);
        try {
            while (*std::min_element(lengths.back().begin(), lengths.back().end()) < target) {
                const std::size_t k = lengths.size() - 1;
                if (k >= max_expansion_levels) throw resource_error("limit point prefix length unreachable");
                if (auto len = seq.length(); len && k >= *len) throw resource_error("explicit directive sequence too short");
                const auto& m = set[seq[k]].incidence_matrix();
                std::vector<std::int64_t> next(d, 0);
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t i = 0; i < d; ++i) next[j] = checked_add(next[j], checked_mul(lengths.back()[i], m(i, j)));
                lengths.push_back(std::move(next));
            }
        } catch (const arithmetic_error&) {
            throw resource_error("limit point prefix length unreachable within 64-bit budget");
        }

        const std::size_t full = lengths.size() - 1;
        auto chains = limit_letter_chains(seq, set, full);
        if (chain_index >= chains.chains.size())
            throw input_error("chain index " + std::to_string(chain_index) + " out of range (" +
                              std::to_string(chains.chains.size()) + " chains)");
        chain_ = chains.chains[chain_index];

        std::size_t n = 0;
        while (lengths[n][index_of(chain_[n])] < target) ++n;
        chain_.resize(n + 1);

        // Inner-first construction; each level must start with the chain letter.
        levels_.resize(n + 1);
        levels_[n] = Word{chain_[n]};
        subs_.resize(n);
        for (std::size_t k = n; k-- > 0;) {
            subs_[k] = seq[k];
            levels_[k] = set[subs_[k]].apply(levels_[k + 1]);
            if (levels_[k].front() != chain_[k]) throw domain_error("letter chain broken: prefixes would not nest");
        }

        cumulative_.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& s = set[subs_[k]];
            auto& c = cumulative_[k];
            c.resize(levels_[k + 1].size() + 1);
            c[0] = 0;
            for (std::size_t m = 0; m < levels_[k + 1].size(); ++m) c[m + 1] = c[m] + s.image(levels_[k + 1][m]).size();
        }
    }

    /// U_n.
    const Word& word() const noexcept { return levels_.front(); }
    std::size_t depth() const noexcept { return levels_.size() - 1; }
    const LetterChain& chain() const noexcept { return chain_; }
    const Word& level(std::size_t j) const { return levels_.at(j); }
    std::size_t substitution_at(std::size_t j) const { return subs_.at(j); }

    /// Terms P_0, ..., P_k for the prefix of length len < |U_n|.
    std::vector<TelescopingTerm> decompose(std::size_t len) const {
        if (len >= word().size()) throw domain_error("prefix length exceeds the computed limit point prefix");
        std::vector<TelescopingTerm> terms;
        if (depth() == 0) return terms;  // only len 0 reaches here
        std::size_t j = 0;
        do {
            const auto& c = cumulative_[j];
            // Largest m with c[m] <= len; m < |w_{j+1}| since len < |w_j|.
            const auto m = std::size_t(std::upper_bound(c.begin(), c.end(), len) - c.begin()) - 1;
            terms.push_back({levels_[j + 1][m], len - c[m]});
            len = m;
            ++j;
        } while (len > 0);
        return terms;
    }

    /// Sum_j (M_0 ... M_{j-1}) l(P_j), exactly.
    AbelianVector telescoped_abelianization(const std::vector<TelescopingTerm>& terms) const {
        const auto d = set_->alphabet_size();
        AbelianVector v(d, 0);
        for (std::size_t j = terms.size(); j-- > 0;) {
            if (j + 1 < terms.size()) v = (*set_)[subs_[j]].incidence_matrix().apply(v);
            const auto& im = (*set_)[subs_[j]].image(terms[j].pivot);
            for (std::size_t i = 0; i < terms[j].length; ++i) v[index_of(im[i])] = checked_add(v[index_of(im[i])], 1);
        }
        return v;
    }

    const SubstitutionSet& set() const noexcept { return *set_; }

private:
    const SubstitutionSet* set_;
    LetterChain chain_;
    std::vector<Word> levels_;
    std::vector<std::size_t> subs_;
    std::vector<std::vector<std::size_t>> cumulative_;
};

/// U_n for the smallest n with |U_n| >= min_len.
inline Word limit_point_prefix(const DirectiveSequence& seq, const SubstitutionSet& set, std::size_t min_len,
                               std::size_t chain_index = 0) {
    return LimitPointExpansion(seq, set, std::max<std::size_t>(min_len, 1), chain_index).word();
}

// ---------------------------------------------------------------------------

struct GapReport {
    std::size_t max_gap = 0;
    Word worst_factor;
    std::size_t factors_checked = 0;
};

/// For every factor of length `factor_len` starting in the first half of u,
/// the smallest g such that every g consecutive start positions of u contain
/// an occurrence; returns the maximum over factors.
inline GapReport factor_gap_check(std::span<const Letter> u, std::size_t factor_len, std::size_t d) {
    GapReport r;
    if (factor_len == 0 || factor_len > u.size()) return r;
    std::uint64_t base = d + 1, top = 1;
    for (std::size_t i = 0; i < factor_len; ++i) {
        if (__builtin_mul_overflow(top, base, &top)) throw unsupported_error("factor length too large to encode");
    }
    const std::size_t last_start = u.size() - factor_len;
    const std::size_t half = u.size() / 2;

    struct Track {
        std::size_t first, last, gap;
    };
    std::unordered_map<std::uint64_t, Track> tracks;
    std::uint64_t code = 0, drop = top / base;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (i >= factor_len) code -= drop * u[i - factor_len];
        code = code * base + u[i];
        if (i + 1 < factor_len) continue;
        const std::size_t start = i + 1 - factor_len;
        auto it = tracks.find(code);
        if (it == tracks.end()) {
            if (start < half) tracks.emplace(code, Track{start, start, start + 1});
        } else {
            it->second.gap = std::max(it->second.gap, start - it->second.last);
            it->second.last = start;
        }
    }
    for (const auto& [c, t] : tracks) {
        const auto gap = std::max(t.gap, last_start - t.last + 1);
        ++r.factors_checked;
        if (gap > r.max_gap || (gap == r.max_gap && r.worst_factor.empty())) {
            r.max_gap = gap;
            r.worst_factor.assign(u.begin() + std::ptrdiff_t(t.first), u.begin() + std::ptrdiff_t(t.first + factor_len));
        }
    }
    return r;
}

struct BalanceReport {
    std::size_t window = 0;
    std::vector<std::int64_t> per_letter;  // max - min of sliding counts
    std::int64_t c = 0;
};

/// C = max over letters of (max - min) of the letter count in length-k windows.
inline BalanceReport balance(std::span<const Letter> u, std::size_t k, std::size_t d) {
    if (k == 0 || k > u.size()) throw input_error("window length must be in 1..|u|");
    BalanceReport r;
    r.window = k;
    std::vector<std::int64_t> count(d, 0);
    for (std::size_t i = 0; i < k; ++i) ++count[index_of(u[i])];
    std::vector<std::int64_t> lo = count, hi = count;
    for (std::size_t i = k; i < u.size(); ++i) {
        --count[index_of(u[i - k])];
        ++count[index_of(u[i])];
        for (std::size_t a = 0; a < d; ++a) {
            lo[a] = std::min(lo[a], count[a]);
            hi[a] = std::max(hi[a], count[a]);
        }
    }
    for (std::size_t a = 0; a < d; ++a) {
        r.per_letter.push_back(hi[a] - lo[a]);
        r.c = std::max(r.c, hi[a] - lo[a]);
    }
    return r;
}

} // namespace rauzy

#endif // RAUZY_ADIC_HPP
