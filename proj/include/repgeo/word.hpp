#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace repgeo {

/// Freely reduced word in the free group on y1, y2, ...
///
/// A letter is a nonzero int: +i stands for y_i and -i for y_i^-1. The
/// empty word is the identity. Every constructor reduces, so two Words
/// compare equal exactly when they denote the same group element.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> letters);
    explicit Word(std::vector<int> letters);

    /// y_i^exponent; exponent 0 gives the identity.
    static Word generator(int index, int exponent = 1);

    std::span<const int> letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }
    /// Largest generator index occurring, 0 for the identity.
    int max_generator() const;

    Word operator*(const Word& other) const;
    Word& operator*=(const Word& other);
    Word inverse() const;

    bool operator==(const Word&) const = default;

    /// `1` for the identity, otherwise e.g. `y1^2*y2^-1`.
    std::string to_string() const;

private:
    std::vector<int> letters_;
};

/// Shortlex: shorter words first, then letterwise by generator index with y_i before y_i^-1.
struct ShortLex {
    static int letter_key(int letter) { return 2 * (letter < 0 ? -letter : letter) + (letter < 0 ? 1 : 0); }
    bool operator()(const Word& a, const Word& b) const;
};

/// All reduced words over y1..y_generators of length at most max_length, in shortlex order.
std::vector<Word> enumerate_words(int generators, std::size_t max_length);

struct WordHash {
    std::size_t operator()(const Word& w) const;
};

}  // namespace repgeo
