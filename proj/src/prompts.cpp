#include "tts/prompts.hpp"

namespace tts {

namespace {

const char* kSynthesisTemplate =
    R"(Your task is to summarize and synthesis the given sources, and draft a thorough answer the provided question.

You want to give a maximal detailed answer to inform a user that asked the question. To construct your answer, you must holistically synthesize the information presented in the collection of source documents below. Your generated answer should start with a direct response to the question, followed by a detailed, thorough and complete answer that integrates the information and claims found across the provided sources.

You should rely ONLY on the sources' information and not your own knowledge when making the synthesis. Do not integrate information not mentioned in any of the sources.
**QUESTION:** {query}

**SOURCES:**
{source_texts}

**ANSWER:**
)";

const char* kDecomposeTemplate =
    R"(You are a text analysis tool. Your task is to decompose the following passage into a thorough list of simple, atomic, and verifiable claims about the real world.

GUIDELINES:
- Each claim must be a single, self-contained factual statement. Include all information conveyed in the passage, be completely thorough.
- Extract only claims about the subject matter. There may be information in the passage relating to sources (e.g. 'according to some source', 'there are conflicting perspectives'). In these cases, remove any mention of sources and extract each perspective as an individual atomic claim.
- Again, to reiterate, you must cover ALL claims in Passage and be completely thorough in your decomposition, following the guidelines above.
PASSAGE:
{synthesis}

Please provide the output as a JSON object with a single key "claims" that contains a list of strings. Example: {"claims": ["Claim 1.", "Claim 2."]}
)";

const char* kStanceTemplate =
    R"(You are a logical reasoning tool. Your task is to determine a source document's stance on a given claim with high precision. Answer with only one of three options: 'SUPPORT', 'CONTRADICT', 'NO_STANCE'.

DEFINITIONS:
1.  SUPPORT: The source must explicitly and unambiguously state the information presented in the claim. If there is a numeric number or date in the claim there should be a match.

2.  CONTRADICT: The source states, conveys, or implies information that makes the claim impossible. This includes:
    a) **Direct Negation:** The source explicitly states or conveys the opposite of the claim.
    b) **Contradiction by Replacement:** The source provides a different, conflicting fact for the same attribute. This is a definitive contradiction.
        - **Example:** If the claim is 'The event was in Paris' and the source says 'The event took place in London,' you MUST return CONTRADICT.
        - **Example:** If the claim is 'The singer was Patti LaBelle' and the source says 'The singer on that track was Merry Clayton,' you MUST return CONTRADICT.
    c) **Implied contradiction:** The source provide claims that cannot be simultaneously true or compatible; or, under minimal assumptions, make any part of the claim impossible to be true.
3.  NO_STANCE: This option should be used very sparingly. There should only be two cases where you use this option:
    a) No support: When the passage supports the claim, but does not provide any key information (e.g. numbers or dates) that the claim presents, failing to back the claim up.
    b) Different topic: When the claim and the passage is very clearly topically unrelated, there's no intersection at all between them, and BOTH can be true without casting doubt on the other. e.g. the claim talks about Michael Jordan the basketball player but the passage talks about Michael Jordan the Computer Scientist.
Give concise thought, no need for elaborate reasoning.
--- TASK ---
SOURCE DOCUMENT:
{text}

CLAIM TO EVALUATE:
{claim}

STANCE (provide your final answer inside <stance> tags, e.g., <stance>SUPPORT</stance>):
)";

} // namespace

PromptTemplates PromptTemplates::defaults() {
    return {kSynthesisTemplate, kDecomposeTemplate, kStanceTemplate};
}

std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& values) {
    std::string out = tmpl;
    for (const auto& [key, value] : values) {
        const std::string token = "{" + key + "}";
        std::size_t pos = 0;
        while ((pos = out.find(token, pos)) != std::string::npos) {
            out.replace(pos, token.size(), value);
            pos += value.size();
        }
    }
    return out;
}

} // namespace tts
