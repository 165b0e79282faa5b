#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tts {

// A source's position on one atomic claim. Abstain is a distinct third state,
// not a missing value.
enum class Stance : std::uint8_t { Support, Contradict, Abstain };

inline bool is_polar(Stance s) { return s != Stance::Abstain; }

std::string_view to_string(Stance s);
Stance stance_from_string(std::string_view text); // throws DataError

// Rectangular (n_sources x n_claims) grid of stances keyed by source ids.
// This is the mechanism's sole input.
class StanceMatrix {
public:
    StanceMatrix(std::vector<std::string> source_ids, std::size_t n_claims);
    static StanceMatrix from_rows(std::vector<std::string> source_ids,
                                  const std::vector<std::vector<Stance>>& rows);

    std::size_t n_sources() const { return ids_.size(); }
    std::size_t n_claims() const { return n_claims_; }

    Stance at(std::size_t source, std::size_t claim) const {
        return cells_[source * n_claims_ + claim];
    }
    void set(std::size_t source, std::size_t claim, Stance s) {
        cells_[source * n_claims_ + claim] = s;
    }

    const std::vector<std::string>& source_ids() const { return ids_; }
    std::size_t index_of(std::string_view source_id) const; // throws DataError

    bool operator==(const StanceMatrix&) const = default;

private:
    std::vector<std::string> ids_;
    std::size_t n_claims_ = 0;
    std::vector<Stance> cells_; // row-major
};

} // namespace tts
