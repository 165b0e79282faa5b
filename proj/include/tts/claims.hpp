#pragma once

#include <string>
#include <vector>

namespace tts {

struct Claim {
    std::string id;
    std::string text;
    bool operator==(const Claim&) const = default;
};

// Held-out claim set for one scored source. Built leave-one-out, so the
// scored source never appears in the provenance.
struct ClaimSet {
    std::string scored_source;
    std::vector<Claim> claims;
    std::vector<std::string> provenance; // peer document ids

    bool operator==(const ClaimSet&) const = default;

    // Throws DataError on duplicate claim ids or scored source in provenance.
    void validate() const;
};

} // namespace tts
