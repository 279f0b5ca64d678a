#include "desanon/word.hpp"

namespace desanon {

RegisterValue value_position(const RegisterBody& body) {
  if (const auto* mv = std::get_if<MutexVal>(&body)) return mv->val;
  if (const auto* iv = std::get_if<IndexedMutexVal>(&body)) return iv->val;
  return kBottom;
}

std::optional<std::uint32_t> carried_index(const RegisterBody& body) {
  if (const auto* dv = std::get_if<DesaVal>(&body)) return dv->y;
  if (const auto* iv = std::get_if<IndexedMutexVal>(&body)) return iv->y;
  if (const auto* av = std::get_if<ApplVal>(&body)) return av->y;
  return std::nullopt;
}

}  // namespace desanon
