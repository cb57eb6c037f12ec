#pragma once

#include <string_view>

namespace estail {

/// Right-tail class by the limit of the residual-life survival
/// h(t) = lim F̄(t + x) / F̄(x): 0 (Short), e^{-theta t} (Medium), 1 (Long).
enum class TailClass { Short, Medium, Long };

constexpr std::string_view to_string(TailClass c) noexcept {
  switch (c) {
    case TailClass::Short: return "short";
    case TailClass::Medium: return "medium";
    case TailClass::Long: return "long";
  }
  return "?";
}

}  // namespace estail
