#include "tts/claims.hpp"

#include <unordered_set>

#include "tts/errors.hpp"

namespace tts {

void ClaimSet::validate() const {
    std::unordered_set<std::string> seen;
    for (const Claim& claim : claims)
        if (!seen.insert(claim.id).second)
            throw DataError("claim set for " + scored_source + ": duplicate claim id " + claim.id);
    for (const std::string& doc : provenance)
        if (doc == scored_source)
            throw DataError("claim set for " + scored_source +
                            ": scored source appears in provenance");
}

} // namespace tts
