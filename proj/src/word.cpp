#include "repgeo/word.hpp"

#include <algorithm>
#include <cstdlib>

#include "repgeo/field.hpp"

namespace repgeo {

namespace {

// Stack-based single pass; each letter either cancels the top or is pushed.
void reduce_into(std::vector<int>& out, std::span<const int> letters) {
    for (int l : letters) {
        if (l == 0) throw AlgebraError("word letter 0 is not a generator");
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
}

}  // namespace

Word::Word(std::initializer_list<int> letters) : Word(std::vector<int>(letters)) {}

Word::Word(std::vector<int> letters) {
    letters_.reserve(letters.size());
    reduce_into(letters_, letters);
}

Word Word::generator(int index, int exponent) {
    if (index < 1) throw AlgebraError("generator index must be >= 1");
    Word w;
    w.letters_.assign(static_cast<std::size_t>(std::abs(exponent)), exponent < 0 ? -index : index);
    return w;
}

int Word::max_generator() const {
    int m = 0;
    for (int l : letters_) m = std::max(m, std::abs(l));
    return m;
}

Word Word::operator*(const Word& other) const {
    Word r = *this;
    r *= other;
    return r;
}

Word& Word::operator*=(const Word& other) {
    reduce_into(letters_, other.letters_);
    return *this;
}

Word Word::inverse() const {
    Word r;
    r.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(-*it);
    return r;
}

std::string Word::to_string() const {
    if (letters_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < letters_.size();) {
        int l = letters_[i];
        std::size_t run = 1;
        while (i + run < letters_.size() && letters_[i + run] == l) ++run;
        if (!out.empty()) out += '*';
        out += 'y' + std::to_string(std::abs(l));
        if (l < 0 || run > 1) out += '^' + std::to_string(l < 0 ? -static_cast<long>(run) : static_cast<long>(run));
        i += run;
    }
    return out;
}

bool ShortLex::operator()(const Word& a, const Word& b) const {
    if (a.length() != b.length()) return a.length() < b.length();
    auto la = a.letters(), lb = b.letters();
    for (std::size_t i = 0; i < la.size(); ++i) {
        int ka = letter_key(la[i]), kb = letter_key(lb[i]);
        if (ka != kb) return ka < kb;
    }
    return false;
}

std::vector<Word> enumerate_words(int generators, std::size_t max_length) {
    std::vector<Word> out{Word{}};
    std::vector<std::vector<int>> frontier{{}};
    std::vector<int> alphabet;
    for (int i = 1; i <= generators; ++i) {
        alphabet.push_back(i);
        alphabet.push_back(-i);
    }
    for (std::size_t len = 1; len <= max_length; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : frontier) {
            for (int l : alphabet) {
                if (!w.empty() && w.back() == -l) continue;
                auto e = w;
                e.push_back(l);
                next.push_back(std::move(e));
            }
        }
        for (const auto& w : next) out.emplace_back(w);
        frontier = std::move(next);
    }
    std::stable_sort(out.begin(), out.end(), ShortLex{});
    return out;
}

std::size_t WordHash::operator()(const Word& w) const {
    std::size_t h = w.length();
    for (int l : w.letters()) h = h * 1000003u ^ static_cast<std::size_t>(l + 0x9e3779b9);
    return h;
}

}  // namespace repgeo
