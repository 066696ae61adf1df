#include "sawlab/codec.hpp"

#include <charconv>
#include <vector>

namespace sawlab {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_int(std::string_view s, const char* what) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw CodecError(std::string("malformed ") + what + ": '" + std::string(s) + "'");
  }
  return value;
}

std::string_view field(std::string_view part, std::string_view key) {
  if (part.substr(0, key.size()) != key || part.size() <= key.size() || part[key.size()] != '=') {
    throw CodecError("expected field '" + std::string(key) + "='");
  }
  return part.substr(key.size() + 1);
}

}  // namespace

Walk parse_walk(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  auto parts = split(text, ';');
  if (parts.size() != 3) throw CodecError("walk record needs three ';'-separated fields");

  const int d = parse_int(field(parts[0], "d"), "dimension");
  if (d < 2 || d > kMaxDim) throw CodecError("dimension out of range");

  auto coords = split(field(parts[1], "origin"), ',');
  if (static_cast<int>(coords.size()) != d) throw CodecError("origin has wrong number of coordinates");
  LatticePoint origin(d);
  for (int i = 0; i < d; ++i) origin[i] = parse_int(coords[static_cast<std::size_t>(i)], "coordinate");

  std::string_view tokens = field(parts[2], "steps");
  std::vector<Step> steps;
  if (!tokens.empty()) {
    const bool signed_form = tokens.front() == '+' || tokens.front() == '-';
    if (signed_form) {
      for (auto tok : split(tokens, ',')) {
        if (tok.empty() || (tok.front() != '+' && tok.front() != '-')) throw CodecError("step token needs a sign");
        int code = parse_int(tok, "step");
        if (code == 0 || code > d || code < -d) throw CodecError("step axis out of range: '" + std::string(tok) + "'");
        steps.push_back(Step::from_code(code));
      }
    } else {
      if (d != 2) throw CodecError("letter steps are only defined for d=2");
      for (char c : tokens) {
        switch (c) {
          case 'E': steps.emplace_back(1, 1); break;
          case 'W': steps.emplace_back(1, -1); break;
          case 'N': steps.emplace_back(2, 1); break;
          case 'S': steps.emplace_back(2, -1); break;
          default: throw CodecError(std::string("invalid step token '") + c + "'");
        }
      }
    }
  }
  return Walk(origin, std::move(steps));
}

std::string step_tokens(const Walk& w) {
  std::string out;
  if (w.dim() == 2) {
    for (const Step& s : w.steps()) out += s.axis() == 1 ? (s.sign() > 0 ? 'E' : 'W') : (s.sign() > 0 ? 'N' : 'S');
    return out;
  }
  bool first = true;
  for (const Step& s : w.steps()) {
    if (!first) out += ',';
    first = false;
    out += s.sign() > 0 ? '+' : '-';
    out += std::to_string(s.axis());
  }
  return out;
}

std::string serialize_walk(const Walk& w) {
  std::string out = "d=" + std::to_string(w.dim()) + ";origin=";
  for (int i = 0; i < w.dim(); ++i) {
    if (i) out += ',';
    out += std::to_string(w.origin()[i]);
  }
  return out + ";steps=" + step_tokens(w);
}

}  // namespace sawlab
