#include "pconf/literal.hpp"

#include <charconv>

namespace pconf {

namespace {

std::optional<Term> atom(std::string_view text) {
  if (is_identifier(text)) return Term::constant(std::string(text));
  if (text.empty()) return std::nullopt;
  std::int64_t v = 0;
  const auto* first = text.data();
  const auto* last = first + text.size();
  if (*first == '+') return std::nullopt;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return Term::integer(v);
}

}  // namespace

std::optional<UserRequirement> parse_requirement_literal(std::string_view text, Polarity polarity) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    auto c = atom(text);
    if (!c) return std::nullopt;
    return UserRequirement{polarity, *c};
  }
  const auto eq = text.find('=', dot + 1);
  if (eq == std::string_view::npos) return std::nullopt;
  auto c = atom(text.substr(0, dot));
  auto p = atom(text.substr(dot + 1, eq - dot - 1));
  auto v = atom(text.substr(eq + 1));
  if (!c || !p || !v) return std::nullopt;
  return UserRequirement{polarity, Triple{*c, *p, *v}};
}

std::string format_requirement_literal(const UserRequirement& r) {
  if (const auto* c = std::get_if<Term>(&r.target)) return c->to_string();
  const auto& t = std::get<Triple>(r.target);
  return t.component.to_string() + "." + t.property.to_string() + "=" + t.value.to_string();
}

}  // namespace pconf
