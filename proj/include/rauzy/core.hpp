#ifndef RAUZY_CORE_HPP
#define RAUZY_CORE_HPP

// Words, substitutions and their exact integer abelianization.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rauzy/errors.hpp"

namespace rauzy {

/// Letters are 1..d. Zero is never a valid letter.
using Letter = std::uint8_t;
using Word = std::vector<Letter>;
using AbelianVector = std::vector<std::int64_t>;

inline constexpr std::size_t max_alphabet_size = 64;

inline std::size_t index_of(Letter a) { return static_cast<std::size_t>(a) - 1; }
inline Letter letter_at(std::size_t index) { return static_cast<Letter>(index + 1); }

// ---------------------------------------------------------------------------
// Checked 64-bit arithmetic

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw arithmetic_error("integer overflow in addition");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw arithmetic_error("integer overflow in multiplication");
    return r;
}

// ---------------------------------------------------------------------------

class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::size_t d) : symbols_(default_symbols(d)) { validate(); }

    /// Display symbols in letter order; the size of the alphabet is the symbol count.
    explicit Alphabet(std::string symbols) : symbols_(std::move(symbols)) { validate(); }

    std::size_t size() const noexcept { return symbols_.size(); }
    const std::string& symbols() const noexcept { return symbols_; }

    char symbol(Letter a) const {
        check(a);
        return symbols_[index_of(a)];
    }

    std::optional<Letter> letter_for(char c) const {
        auto pos = symbols_.find(c);
        if (pos == std::string::npos) return std::nullopt;
        return letter_at(pos);
    }

    bool contains(Letter a) const noexcept { return a >= 1 && a <= symbols_.size(); }

    void check(Letter a) const {
        if (!contains(a)) {
            throw input_error("letter " + std::to_string(int(a)) + " outside alphabet of size " +
                              std::to_string(size()));
        }
    }

    Word word(std::string_view text) const {
        Word w;
        w.reserve(text.size());
        for (char c : text) {
            auto a = letter_for(c);
            if (!a) throw input_error(std::string("unknown letter '") + c + "'");
            w.push_back(*a);
        }
        return w;
    }

    std::string format(std::span<const Letter> w) const {
        std::string s;
        s.reserve(w.size());
        for (Letter a : w) s.push_back(symbol(a));
        return s;
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    static std::string default_symbols(std::size_t d) {
        std::string s;
        for (std::size_t i = 0; i < d && i < 26; ++i) s.push_back(static_cast<char>('a' + i));
        for (std::size_t i = 26; i < d; ++i) s.push_back(static_cast<char>('A' + (i - 26) % 26));
        return s;
    }

    void validate() const {
        if (symbols_.size() < 2) throw input_error("alphabet needs at least two letters");
        if (symbols_.size() > max_alphabet_size) throw unsupported_error("alphabet too large");
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            const auto c = static_cast<unsigned char>(symbols_[i]);
            if (c <= 0x20 || c >= 0x7f) throw input_error("alphabet symbols must be printable ASCII");
            if (symbols_.find(symbols_[i], i + 1) != std::string::npos)
                throw input_error(std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
        }
    }

    std::string symbols_;
};

// ---------------------------------------------------------------------------

/// Square integer matrix with checked arithmetic, row-major storage.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) : n_(rows.size()) {
        a_.reserve(n_ * n_);
        for (const auto& r : rows) {
            if (r.size() != n_) throw input_error("matrix rows must have equal length");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        if (x.n_ != y.n_) throw input_error("matrix size mismatch");
        IntMatrix r(x.n_);
        for (std::size_t i = 0; i < x.n_; ++i)
            for (std::size_t k = 0; k < x.n_; ++k) {
                const auto xik = x(i, k);
                if (xik == 0) continue;
                for (std::size_t j = 0; j < x.n_; ++j)
                    r(i, j) = checked_add(r(i, j), checked_mul(xik, y(k, j)));
            }
        return r;
    }

    friend IntMatrix operator+(const IntMatrix& x, const IntMatrix& y) {
        if (x.n_ != y.n_) throw input_error("matrix size mismatch");
        IntMatrix r(x.n_);
        for (std::size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = checked_add(x.a_[i], y.a_[i]);
        return r;
    }

    AbelianVector apply(std::span<const std::int64_t> v) const {
        if (v.size() != n_) throw input_error("vector size mismatch");
        AbelianVector r(n_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                r[i] = checked_add(r[i], checked_mul((*this)(i, j), v[j]));
        return r;
    }

    IntMatrix scaled(std::int64_t c) const {
        IntMatrix r(n_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = checked_mul(a_[i], c);
        return r;
    }

    bool strictly_positive() const {
        return !a_.empty() && std::all_of(a_.begin(), a_.end(), [](auto x) { return x > 0; });
    }
    bool nonnegative() const {
        return std::all_of(a_.begin(), a_.end(), [](auto x) { return x >= 0; });
    }
    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](auto x) { return x == 0; });
    }

    std::int64_t trace() const {
        std::int64_t t = 0;
        for (std::size_t i = 0; i < n_; ++i) t = checked_add(t, (*this)(i, i));
        return t;
    }

    /// Rows as "[[a,b],[c,d]]".
    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < n_; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < n_; ++j) {
                if (j) s += ',';
                s += std::to_string((*this)(i, j));
            }
            s += ']';
        }
        return s + "]";
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::int64_t> a_;
};

// ---------------------------------------------------------------------------

inline AbelianVector abelianize(std::span<const Letter> w, std::size_t d) {
    AbelianVector v(d, 0);
    for (Letter a : w) {
        if (a < 1 || a > d) {
            throw input_error("letter " + std::to_string(int(a)) + " outside alphabet of size " +
                              std::to_string(d));
        }
        ++v[index_of(a)];
    }
    return v;
}

/// Nonerasing endomorphism of the free monoid, given by its letter images.
class Substitution {
public:
    Substitution() = default;

    Substitution(std::string name, std::vector<Word> images)
        : name_(std::move(name)), images_(std::move(images)) {
        const std::size_t d = images_.size();
        if (d < 2) throw input_error("substitution needs an alphabet of at least two letters");
        if (d > max_alphabet_size) throw unsupported_error("alphabet too large");
        matrix_ = IntMatrix(d);
        for (std::size_t j = 0; j < d; ++j) {
            if (images_[j].empty())
                throw input_error("erasing substitution: image of letter " + std::to_string(j + 1) + " is empty");
            const auto counts = abelianize(images_[j], d);
            for (std::size_t i = 0; i < d; ++i) matrix_(i, j) = counts[i];
        }
    }

    /// Images written with the display symbols of `alphabet`, in letter order.
    static Substitution from_strings(std::string name, const Alphabet& alphabet,
                                     std::initializer_list<std::string_view> images) {
        std::vector<Word> w;
        for (auto s : images) w.push_back(alphabet.word(s));
        if (w.size() != alphabet.size()) throw input_error("one image per letter required");
        return Substitution(std::move(name), std::move(w));
    }

    const std::string& name() const noexcept { return name_; }
    std::size_t alphabet_size() const noexcept { return images_.size(); }
    const std::vector<Word>& images() const noexcept { return images_; }

    const Word& image(Letter a) const {
        if (a < 1 || a > images_.size()) throw input_error("letter outside alphabet");
        return images_[index_of(a)];
    }

    /// M[i][j] = |sigma(j)|_i.
    const IntMatrix& incidence_matrix() const noexcept { return matrix_; }

    Word apply(std::span<const Letter> w) const {
        std::size_t n = 0;
        for (Letter a : w) n += image(a).size();
        Word out;
        out.reserve(n);
        for (Letter a : w) {
            const auto& im = images_[index_of(a)];
            out.insert(out.end(), im.begin(), im.end());
        }
        return out;
    }

    std::size_t max_image_length() const {
        std::size_t m = 0;
        for (const auto& im : images_) m = std::max(m, im.size());
        return m;
    }

private:
    std::string name_;
    std::vector<Word> images_;
    IntMatrix matrix_;
};

inline Word apply(const Substitution& s, std::span<const Letter> w) { return s.apply(w); }
inline const IntMatrix& incidence_matrix(const Substitution& s) { return s.incidence_matrix(); }

/// Wielandt's bound (d-1)^2 + 1: every primitive d x d matrix has a positive power at or below it.
inline std::size_t wielandt_bound(std::size_t d) { return d * d - 2 * d + 2; }

/// Smallest k <= max_k with M^k strictly positive.
inline std::optional<std::size_t> primitivity_exponent(const IntMatrix& m, std::optional<std::size_t> max_k = {}) {
    const std::size_t limit = max_k.value_or(wielandt_bound(m.size()));
    if (limit < 1) throw input_error("max_k must be at least 1");
    if (!m.nonnegative()) throw domain_error("primitivity requires a nonnegative matrix");
    IntMatrix p = m;
    for (std::size_t k = 1; k <= limit; ++k) {
        if (p.strictly_positive()) return k;
        if (k < limit) p = p * m;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

/// sigma(letter_in) = prefix . pivot . suffix, with |prefix| = position - 1.
struct PrefixSuffixEntry {
    Letter letter_in;
    std::size_t position;
    Word prefix;
    Letter pivot;
    Word suffix;
};

inline std::vector<PrefixSuffixEntry> prefix_suffix_table(const Substitution& s) {
    std::vector<PrefixSuffixEntry> table;
    for (std::size_t j = 0; j < s.alphabet_size(); ++j) {
        const Word& im = s.images()[j];
        for (std::size_t k = 1; k <= im.size(); ++k) {
            table.push_back({letter_at(j), k, Word(im.begin(), im.begin() + static_cast<std::ptrdiff_t>(k - 1)),
                             im[k - 1], Word(im.begin() + static_cast<std::ptrdiff_t>(k), im.end())});
        }
    }
    return table;
}

} // namespace rauzy

#endif // RAUZY_CORE_HPP
