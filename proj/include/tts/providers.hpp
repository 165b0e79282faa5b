#pragma once

#include <map>
#include <string>
#include <vector>

#include "tts/stance.hpp"

namespace tts {

// One retrieved document. The role tag is fixture metadata (truthful /
// partial / deceptive / adversarial); scoring never reads it.
struct Document {
    std::string source_id;
    std::string text;
    std::string role;
};

// The three pluggable model contracts: draft summarizer M, claim decomposer D,
// stance extractor E.
class Provider {
public:
    virtual ~Provider() = default;
    virtual std::string summarize(const std::string& query,
                                  const std::vector<Document>& documents) = 0;
    virtual std::vector<std::string> decompose(const std::string& draft) = 0;
    virtual Stance extract(const Document& document, const std::string& claim) = 0;
};

// Deterministic test double driven entirely by document text.
//
// Document grammar: text splits into sentences on '.', '!' and '?'. A
// sentence starting with "Not true: " denies the remainder. The summarizer
// emits the distinct plain assertions across documents in first-seen order;
// the decomposer splits a draft back into sentences; the extractor returns
// Support for an asserted claim, Contradict for a denied one, Abstain
// otherwise. An explicit stance table overrides the text rules per
// (source_id, claim). Pure and reentrant.
class MockProvider : public Provider {
public:
    MockProvider() = default;
    explicit MockProvider(std::map<std::pair<std::string, std::string>, Stance> stance_table)
        : table_(std::move(stance_table)) {}

    std::string summarize(const std::string& query,
                          const std::vector<Document>& documents) override;
    std::vector<std::string> decompose(const std::string& draft) override;
    Stance extract(const Document& document, const std::string& claim) override;

    static constexpr const char* kDenialPrefix = "Not true: ";

private:
    std::map<std::pair<std::string, std::string>, Stance> table_;
};

// Splits text into trimmed, whitespace-normalized sentences.
std::vector<std::string> split_sentences(const std::string& text);

// Collapses runs of whitespace and trims; claim dedup key.
std::string normalize_whitespace(const std::string& text);

// Parses "<stance>SUPPORT|CONTRADICT|NO_STANCE</stance>" from model output
// (case-insensitive tag contents; last occurrence wins). Returns false when
// no parseable tag is present.
bool parse_stance_tag(const std::string& text, Stance& out);

} // namespace tts
