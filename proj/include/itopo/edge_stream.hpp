#pragma once

// Plain-text arc streams: a first line holding n, then one "tail head" pair
// per line, 0-based. Lines starting with '#' and blank lines are skipped.

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "itopo/common.hpp"
#include "itopo/generators.hpp"

namespace itopo {

class EdgeStreamError : public std::runtime_error {
 public:
  EdgeStreamError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

template <class T>
bool parse_decimal(std::string_view& s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr == s.data()) return false;
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return true;
}

}  // namespace detail

inline ArcSequence read_edge_stream(std::istream& in) {
  ArcSequence seq;
  bool have_n = false;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    std::string_view s = detail::trim(raw);
    if (s.empty() || s.front() == '#') continue;
    if (!have_n) {
      if (!detail::parse_decimal(s, seq.n) || !s.empty()) throw EdgeStreamError(line, "expected vertex count");
      have_n = true;
      continue;
    }
    Arc a;
    if (!detail::parse_decimal(s, a.tail) || s.empty() || s.front() != ' ')
      throw EdgeStreamError(line, "expected 'tail head'");
    s.remove_prefix(1);
    if (!detail::parse_decimal(s, a.head) || !s.empty()) throw EdgeStreamError(line, "expected 'tail head'");
    if (a.tail >= seq.n || a.head >= seq.n)
      throw EdgeStreamError(line, "vertex out of range [0, " + std::to_string(seq.n) + ")");
    seq.arcs.push_back(a);
  }
  if (!have_n) throw EdgeStreamError(0, "empty stream");
  return seq;
}

inline void write_edge_stream(std::ostream& out, const ArcSequence& seq) {
  out << seq.n << '\n';
  for (const Arc& a : seq.arcs) out << a.tail << ' ' << a.head << '\n';
}

}  // namespace itopo
