#include "tts/stance.hpp"

#include "tts/errors.hpp"

namespace tts {

std::string_view to_string(Stance s) {
    switch (s) {
    case Stance::Support: return "support";
    case Stance::Contradict: return "contradict";
    case Stance::Abstain: return "abstain";
    }
    return "abstain";
}

Stance stance_from_string(std::string_view text) {
    if (text == "support") return Stance::Support;
    if (text == "contradict") return Stance::Contradict;
    if (text == "abstain") return Stance::Abstain;
    throw DataError("unknown stance \"" + std::string(text) +
                    "\" (expected support/contradict/abstain)");
}

StanceMatrix::StanceMatrix(std::vector<std::string> source_ids, std::size_t n_claims)
    : ids_(std::move(source_ids)),
      n_claims_(n_claims),
      cells_(ids_.size() * n_claims, Stance::Abstain) {}

StanceMatrix StanceMatrix::from_rows(std::vector<std::string> source_ids,
                                     const std::vector<std::vector<Stance>>& rows) {
    if (rows.size() != source_ids.size())
        throw DataError("stance matrix: row count does not match source id count");
    std::size_t n_claims = rows.empty() ? 0 : rows.front().size();
    StanceMatrix m(std::move(source_ids), n_claims);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != n_claims)
            throw DataError("stance matrix: row " + std::to_string(i) +
                            " has " + std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(n_claims));
        for (std::size_t k = 0; k < n_claims; ++k) m.set(i, k, rows[i][k]);
    }
    return m;
}

std::size_t StanceMatrix::index_of(std::string_view source_id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i)
        if (ids_[i] == source_id) return i;
    throw DataError("unknown source id \"" + std::string(source_id) + "\"");
}

} // namespace tts
