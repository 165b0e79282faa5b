#pragma once

#include <stdexcept>
#include <string>

namespace tts {

// Malformed inputs: bad files, bad shapes, domain violations.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Failures talking to an LLM provider (network, bad response, missing credential).
class ProviderError : public std::runtime_error {
public:
    explicit ProviderError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tts
