#pragma once

#include <map>
#include <string>

namespace tts {

// Default prompt templates for the HTTP-backed provider. Deployments can
// override any of them with files named in the provider config.
struct PromptTemplates {
    std::string synthesis;  // placeholders {query}, {source_texts}
    std::string decompose;  // placeholder {synthesis}
    std::string stance;     // placeholders {text}, {claim}

    static PromptTemplates defaults();
};

// Replaces each "{key}" token with its value; unknown braces are left alone.
std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& values);

} // namespace tts
