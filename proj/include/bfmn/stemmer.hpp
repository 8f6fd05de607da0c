#pragma once

#include <string>
#include <string_view>

namespace bfmn {

// English Porter2 (Snowball) suffix-stripping stem of a single lowercase
// word. Deterministic; words of two letters or fewer are returned as-is.
std::string porter2_stem(std::string_view word);

}  // namespace bfmn
