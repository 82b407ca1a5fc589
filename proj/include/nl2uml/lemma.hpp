#pragma once

#include <string>

namespace nl2uml {

// English morphology helpers shared by identifier normalization, the
// builtin parser, and the dataset tooling. All functions expect lowercase
// input unless noted and are deterministic.

// Singular form of a noun ("titles" -> "title", "meshes" -> "mesh",
// "news" -> "news"). Returns the input unchanged when no rule applies.
std::string lemma_noun(const std::string& word);

// Base form of a verb ("has" -> "have", "published" -> "publish").
std::string lemma_verb(const std::string& word);

// Plural form of a noun ("copy" -> "copies"). Inverse of lemma_noun for
// regular nouns; used by the dataset generator.
std::string pluralize_noun(const std::string& word);

// True when the surface form is a plural noun (lemma differs or the word
// is a known irregular plural).
bool is_plural_noun(const std::string& word);

std::string to_lower(const std::string& s);

}  // namespace nl2uml
