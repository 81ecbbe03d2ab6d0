#pragma once

#include <string>
#include <vector>

namespace sliver {

// The bottom-of-stack marker. It is written once at the bottom of every full
// stack content, is never pushed above other symbols, and is never removed.
inline constexpr const char* kBottom = "_bot";

// A stack word, topmost symbol first. Full stack contents end in kBottom;
// pushed words contain kBottom only when rewriting the bottom itself (and
// then only as the last symbol).
using StackWord = std::vector<std::string>;

bool ends_in_bottom(const StackWord& w);
bool contains_bottom(const StackWord& w);

// Key form used wherever a stack word has to act as a map key or a JSON
// direction value: symbols joined with '+', the empty word giving "".
std::string stack_word_key(const StackWord& w);
StackWord parse_stack_word_key(const std::string& key);

}  // namespace sliver
