#include "tts/providers.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace tts {

std::string normalize_whitespace(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool in_space = true; // leading whitespace dropped
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!in_space) out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(c);
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> sentences;
    std::string current;
    for (char c : text) {
        if (c == '.' || c == '!' || c == '?') {
            std::string sentence = normalize_whitespace(current);
            if (!sentence.empty()) sentences.push_back(std::move(sentence));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    std::string tail = normalize_whitespace(current);
    if (!tail.empty()) sentences.push_back(std::move(tail));
    return sentences;
}

namespace {

bool is_denial(const std::string& sentence, std::string& inner) {
    const std::string prefix = MockProvider::kDenialPrefix;
    const std::string trimmed_prefix = normalize_whitespace(prefix);
    if (sentence.rfind(trimmed_prefix, 0) == 0) {
        inner = normalize_whitespace(sentence.substr(trimmed_prefix.size()));
        return true;
    }
    return false;
}

} // namespace

std::string MockProvider::summarize(const std::string& query,
                                    const std::vector<Document>& documents) {
    (void)query; // the mock draft depends only on document content
    std::vector<std::string> assertions;
    std::unordered_set<std::string> seen;
    for (const Document& doc : documents) {
        for (const std::string& sentence : split_sentences(doc.text)) {
            std::string inner;
            if (is_denial(sentence, inner)) continue;
            if (seen.insert(sentence).second) assertions.push_back(sentence);
        }
    }
    std::string draft;
    for (const std::string& assertion : assertions) {
        draft += assertion;
        draft += ". ";
    }
    return draft;
}

std::vector<std::string> MockProvider::decompose(const std::string& draft) {
    return split_sentences(draft);
}

Stance MockProvider::extract(const Document& document, const std::string& claim) {
    const std::string wanted = normalize_whitespace(claim);
    auto it = table_.find({document.source_id, wanted});
    if (it != table_.end()) return it->second;
    for (const std::string& sentence : split_sentences(document.text)) {
        std::string inner;
        if (is_denial(sentence, inner)) {
            if (inner == wanted) return Stance::Contradict;
        } else if (sentence == wanted) {
            return Stance::Support;
        }
    }
    return Stance::Abstain;
}

bool parse_stance_tag(const std::string& text, Stance& out) {
    const std::string open = "<stance>";
    const std::string close = "</stance>";
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return s;
    };
    const std::string haystack = lower(text);
    bool found = false;
    std::size_t pos = 0;
    while (true) {
        const std::size_t start = haystack.find(open, pos);
        if (start == std::string::npos) break;
        const std::size_t end = haystack.find(close, start + open.size());
        if (end == std::string::npos) break;
        const std::string value =
            normalize_whitespace(haystack.substr(start + open.size(), end - start - open.size()));
        if (value == "support") {
            out = Stance::Support;
            found = true;
        } else if (value == "contradict") {
            out = Stance::Contradict;
            found = true;
        } else if (value == "no_stance") {
            out = Stance::Abstain;
            found = true;
        }
        pos = end + close.size();
    }
    return found;
}

} // namespace tts
