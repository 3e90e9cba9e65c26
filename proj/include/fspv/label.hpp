#pragma once

#include <compare>
#include <string>
#include <vector>

#include "fspv/diagnostics.hpp"

namespace fspv {

/// One dot-separated component of a canonical label: a word or an integer.
/// Integers compare numerically; at mixed positions integers come first.
struct LabelPart {
    bool is_int = false;
    long num = 0;
    std::string word;

    static LabelPart of_word(std::string w) { return LabelPart{false, 0, std::move(w)}; }
    static LabelPart of_int(long v) { return LabelPart{true, v, {}}; }

    friend bool operator==(const LabelPart& a, const LabelPart& b) {
        if (a.is_int != b.is_int) return false;
        return a.is_int ? a.num == b.num : a.word == b.word;
    }
    friend std::strong_ordering operator<=>(const LabelPart& a, const LabelPart& b) {
        if (a.is_int != b.is_int) return a.is_int ? std::strong_ordering::less
                                                  : std::strong_ordering::greater;
        if (a.is_int) return a.num <=> b.num;
        return a.word <=> b.word;
    }
};

/// Canonical action label: `a[3]` is "a.3", prefix labeling `c[1]:P` turns
/// every label l of P into "c.1." + l.
struct Label {
    std::vector<LabelPart> parts;

    Label() = default;
    explicit Label(std::vector<LabelPart> p) : parts(std::move(p)) {}
    explicit Label(const std::string& word) { parts.push_back(LabelPart::of_word(word)); }
    Label(const std::string& word, long index) {
        parts.push_back(LabelPart::of_word(word));
        parts.push_back(LabelPart::of_int(index));
    }

    std::string text() const {
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += '.';
            out += parts[i].is_int ? std::to_string(parts[i].num) : parts[i].word;
        }
        return out;
    }

    /// Parse canonical text ("c.1.full.moveto.2") back into a label.
    static Label from_text(const std::string& text) {
        Label out;
        std::string cur;
        auto flush = [&] {
            if (cur.empty()) {
                fail(ErrorCode::SyntaxError, "empty label component in '" + text + "'");
            }
            bool numeric = true;
            for (char c : cur) {
                if (c < '0' || c > '9') { numeric = false; break; }
            }
            if (numeric) {
                out.parts.push_back(LabelPart::of_int(std::stol(cur)));
            } else {
                out.parts.push_back(LabelPart::of_word(cur));
            }
            cur.clear();
        };
        for (char c : text) {
            if (c == '.') {
                flush();
            } else {
                cur += c;
            }
        }
        flush();
        return out;
    }

    Label with_prefix(const Label& prefix) const {
        Label out;
        out.parts.reserve(prefix.parts.size() + parts.size());
        out.parts.insert(out.parts.end(), prefix.parts.begin(), prefix.parts.end());
        out.parts.insert(out.parts.end(), parts.begin(), parts.end());
        return out;
    }

    friend bool operator==(const Label&, const Label&) = default;
    friend std::strong_ordering operator<=>(const Label& a, const Label& b) {
        const std::size_t n = std::min(a.parts.size(), b.parts.size());
        for (std::size_t i = 0; i < n; ++i) {
            auto c = a.parts[i] <=> b.parts[i];
            if (c != std::strong_ordering::equal) return c;
        }
        return a.parts.size() <=> b.parts.size();
    }
};

}  // namespace fspv
