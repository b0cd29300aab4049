#include "pconf/term.hpp"

namespace pconf {

namespace {

int kind_rank(const Term& t) {
  if (t.is_integer()) return 0;
  if (t.is_constant()) return 1;
  return 2;
}

void append(const Term& t, std::string& out) {
  if (t.is_integer()) {
    out += std::to_string(t.as_integer());
  } else if (t.is_constant()) {
    out += t.name();
  } else {
    out += '(';
    bool first = true;
    for (const auto& item : t.items()) {
      if (!first) out += ',';
      first = false;
      append(item, out);
    }
    out += ')';
  }
}

}  // namespace

std::string Term::to_string() const {
  std::string out;
  append(*this, out);
  return out;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  const int ka = kind_rank(a);
  const int kb = kind_rank(b);
  if (ka != kb) return ka <=> kb;
  if (a.is_integer()) return a.as_integer() <=> b.as_integer();
  if (a.is_constant()) return a.name().compare(b.name()) <=> 0;
  const auto& xs = a.items();
  const auto& ys = b.items();
  const auto n = std::min(xs.size(), ys.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = xs[i] <=> ys[i]; c != 0) return c;
  }
  return xs.size() <=> ys.size();
}

bool is_identifier(std::string_view text) {
  if (text.empty() || text.front() < 'a' || text.front() > 'z') return false;
  for (char ch : text) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '_';
    if (!ok) return false;
  }
  return true;
}

std::string_view to_string(Polarity p) { return p == Polarity::req ? "req" : "nreq"; }

std::string target_to_string(const Target& t) {
  if (const auto* c = std::get_if<Term>(&t)) return c->to_string();
  return std::get<Triple>(t).to_string();
}

}  // namespace pconf
