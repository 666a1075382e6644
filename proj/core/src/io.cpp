#include "mgl/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "mgl/error.hpp"
#include "mgl/version.hpp"

namespace mgl {
namespace {

class LineReader {
 public:
  LineReader(std::istream& in, std::string_view source) : in_(in), source_(source) {}

  // Next nonblank line with comments removed, split on whitespace.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::kParseError, fmt::format("{}:{}: {}", source_, line_, message));
  }

  std::uint64_t integer(const std::string& token, const char* what) const {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      fail(fmt::format("expected a nonnegative integer for {}, got '{}'", what, token));
    }
    return v;
  }

  Rational rational(const std::string& token) const {
    try {
      return parse_rational(token);
    } catch (const Error&) {
      fail(fmt::format("expected a number, got '{}'", token));
    }
  }

  std::size_t line() const noexcept { return line_; }
  std::string_view source() const noexcept { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};

template <class Fn>
auto with_source(std::string_view source, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    std::string what = e.what();
    const std::string prefix = std::string(to_string(e.code())) + ": ";
    if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
    throw Error(e.code(), fmt::format("{}: {}", source, what));
  }
}

template <class Fn>
auto open_and_read(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, fmt::format("{}: cannot open file", path.string()));
  return fn(in, path.string());
}

void write_header(std::ostream& out, std::span<const std::string> header) {
  for (const auto& line : header) out << line << '\n';
}

}  // namespace

Multigraph read_mg(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::vector<std::string> tok;
  if (!reader.next(tok)) reader.fail("empty file, expected 'n <count>'");
  if (tok.size() != 2 || tok[0] != "n") reader.fail("expected 'n <count>'");
  const std::uint64_t n = reader.integer(tok[1], "n");
  if (n == 0) reader.fail("n must be positive");
  if (n > 100000) reader.fail("n is too large");
  Multigraph g(n);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  while (reader.next(tok)) {
    if (tok.size() != 3) reader.fail("expected 'i j m'");
    const std::uint64_t i = reader.integer(tok[0], "i");
    const std::uint64_t j = reader.integer(tok[1], "j");
    const std::uint64_t m = reader.integer(tok[2], "m");
    if (i < 1 || j < 1 || i > n || j > n) reader.fail(fmt::format("vertex out of range 1..{}", n));
    if (i > j) reader.fail("pairs must be written with i <= j");
    if (m < 1) reader.fail("multiplicity must be at least 1");
    const std::uint64_t stored = i == j ? 2 * m : m;
    if (stored > UINT32_MAX) reader.fail("multiplicity is too large");
    if (!seen.emplace(i, j).second) reader.fail(fmt::format("pair {} {} listed twice", i, j));
    g.set(i - 1, j - 1, static_cast<Mult>(stored));
  }
  return g;
}

Multigraph read_mg_file(const std::filesystem::path& path) {
  return open_and_read(path, [](std::istream& in, const std::string& name) { return read_mg(in, name); });
}

void write_mg(std::ostream& out, const Multigraph& g, std::span<const std::string> header) {
  write_header(out, header);
  out << "n " << g.size() << '\n';
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i; j < g.size(); ++j) {
      if (g(i, j) == 0) continue;
      out << i + 1 << ' ' << j + 1 << ' ' << (i == j ? g(i, j) / 2 : g(i, j)) << '\n';
    }
  }
}

StepMultigraphon read_mgw(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::vector<std::string> tok;
  std::optional<std::size_t> m;
  std::optional<Mult> cap;
  RawGraphon raw;
  std::vector<std::vector<std::size_t>> pair_line;
  std::vector<std::size_t> diag_line;
  std::size_t widths_line = 0;
  auto index = [&](const std::string& t, const char* what) {
    const std::uint64_t v = reader.integer(t, what);
    if (v < 1 || v > *m) reader.fail(fmt::format("{} out of range 1..{}", what, *m));
    return static_cast<std::size_t>(v - 1);
  };
  auto need_header = [&] {
    if (!m || !cap) reader.fail("'m' and 'M' must come first");
  };
  while (reader.next(tok)) {
    const std::string& key = tok[0];
    if (key == "m") {
      if (m) reader.fail("'m' given twice");
      if (tok.size() != 2) reader.fail("expected 'm <cells>'");
      const std::uint64_t v = reader.integer(tok[1], "m");
      if (v == 0 || v > 10000) reader.fail("m must be in 1..10000");
      m = static_cast<std::size_t>(v);
    } else if (key == "M") {
      if (cap) reader.fail("'M' given twice");
      if (tok.size() != 2) reader.fail("expected 'M <cap>'");
      const std::uint64_t v = reader.integer(tok[1], "M");
      if (v > 10000) reader.fail("M must be at most 10000");
      cap = static_cast<Mult>(v);
    } else if (key == "widths") {
      need_header();
      if (widths_line) reader.fail("'widths' given twice");
      if (tok.size() != *m + 1) reader.fail(fmt::format("expected {} widths", *m));
      for (std::size_t a = 0; a < *m; ++a) raw.widths.push_back(reader.rational(tok[a + 1]));
      widths_line = reader.line();
    } else if (key == "cell" || key == "diag") {
      need_header();
      if (raw.pair.empty()) {
        raw.pair.assign(*m, std::vector<std::vector<Rational>>(*m));
        raw.diag.assign(*m, {});
        pair_line.assign(*m, std::vector<std::size_t>(*m, 0));
        diag_line.assign(*m, 0);
      }
      const bool is_cell = key == "cell";
      const std::size_t labels = is_cell ? 2 : 1;
      if (tok.size() < labels + 1 || tok[labels].empty() || tok[labels].back() != ':') {
        reader.fail(is_cell ? "expected 'cell a b: p0 ... pM'" : "expected 'diag a: d0 d2 ...'");
      }
      tok[labels].pop_back();
      const std::size_t a = index(tok[1], "cell index");
      const std::size_t values = tok.size() - labels - 1;
      if (is_cell) {
        const std::size_t b = index(tok[2], "cell index");
        if (pair_line[a][b]) reader.fail(fmt::format("cell {} {} given twice", a + 1, b + 1));
        if (values != *cap + 1u) reader.fail(fmt::format("expected {} probabilities", *cap + 1));
        for (std::size_t l = 0; l < values; ++l) raw.pair[a][b].push_back(reader.rational(tok[l + 3]));
        pair_line[a][b] = reader.line();
      } else {
        if (diag_line[a]) reader.fail(fmt::format("diag {} given twice", a + 1));
        if (values != *cap / 2 + 1u) reader.fail(fmt::format("expected {} diagonal probabilities", *cap / 2 + 1));
        raw.diag[a].assign(*cap + 1u, Rational(0));
        for (std::size_t l = 0; l < values; ++l) raw.diag[a][2 * l] = reader.rational(tok[l + 2]);
        diag_line[a] = reader.line();
      }
    } else {
      reader.fail(fmt::format("unknown key '{}'", key));
    }
  }
  if (!m || !cap) reader.fail("missing 'm' or 'M'");
  if (!widths_line) reader.fail("missing 'widths'");
  if (raw.pair.empty()) reader.fail("missing 'cell' lines");
  for (std::size_t a = 0; a < *m; ++a) {
    for (std::size_t b = a; b < *m; ++b) {
      if (!pair_line[a][b] && !pair_line[b][a]) reader.fail(fmt::format("missing cell {} {}", a + 1, b + 1));
      if (!pair_line[a][b]) raw.pair[a][b] = raw.pair[b][a];
      if (!pair_line[b][a]) raw.pair[b][a] = raw.pair[a][b];
    }
    if (!diag_line[a]) reader.fail(fmt::format("missing diag {}", a + 1));
  }
  return with_source(source, [&] { return StepMultigraphon::validate(std::move(raw)); });
}

StepMultigraphon read_mgw_file(const std::filesystem::path& path) {
  return open_and_read(path, [](std::istream& in, const std::string& name) { return read_mgw(in, name); });
}

void write_mgw(std::ostream& out, const StepMultigraphon& w, std::span<const std::string> header) {
  write_header(out, header);
  const std::size_t m = w.cells();
  out << "m " << m << "\nM " << w.cap() << "\nwidths";
  for (std::size_t a = 0; a < m; ++a) out << ' ' << to_string(w.width(a));
  out << '\n';
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      out << "cell " << a + 1 << ' ' << b + 1 << ':';
      for (const Rational& p : w.pair(a, b)) out << ' ' << to_string(p);
      out << '\n';
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    out << "diag " << a + 1 << ':';
    for (std::size_t l = 0; l < w.diag(a).size(); l += 2) out << ' ' << to_string(w.diag(a)[l]);
    out << '\n';
  }
}

std::vector<ParameterTable> read_ptab(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::vector<std::string> tok;
  std::vector<ParameterTable> tables;
  while (reader.next(tok)) {
    if (tok[0] == "k") {
      if (tok.size() != 4 && tok.size() != 6) reader.fail("expected 'k <k> max_mult <M> [max_edges <E>]'");
      if (tok[2] != "max_mult") reader.fail("expected 'max_mult' after k");
      ParameterTable t;
      t.k = reader.integer(tok[1], "k");
      if (t.k == 0 || t.k > 12) reader.fail("k must be in 1..12");
      const std::uint64_t cap = reader.integer(tok[3], "max_mult");
      if (cap > 10000) reader.fail("max_mult must be at most 10000");
      t.truncation.max_mult = static_cast<Mult>(cap);
      if (tok.size() == 6) {
        if (tok[4] != "max_edges") reader.fail("expected 'max_edges'");
        t.truncation.max_edges = reader.integer(tok[5], "max_edges");
      }
      tables.push_back(std::move(t));
      continue;
    }
    if (tables.empty()) reader.fail("expected a 'k <k> max_mult <M>' header first");
    ParameterTable& t = tables.back();
    if (tok.size() != 2) reader.fail("expected '<upper triangle> <value>'");
    if (tok[0] == "default") {
      if (t.default_value) reader.fail("'default' given twice in a section");
      t.default_value = reader.rational(tok[1]);
      continue;
    }
    std::vector<Mult> upper;
    std::string_view rest = tok[0];
    while (true) {
      const auto comma = rest.find(',');
      const std::uint64_t v = reader.integer(std::string(rest.substr(0, comma)), "matrix entry");
      if (v > t.truncation.max_mult) {
        reader.fail(fmt::format("entry {} exceeds max_mult {}", v, t.truncation.max_mult));
      }
      upper.push_back(static_cast<Mult>(v));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (upper.size() != t.k * (t.k + 1) / 2) {
      reader.fail(fmt::format("expected {} entries for k = {}", t.k * (t.k + 1) / 2, t.k));
    }
    Multigraph key;
    try {
      key = Multigraph::from_upper_triangle(t.k, upper);
    } catch (const Error& e) {
      reader.fail(e.what());
    }
    if (t.truncation.max_edges && edge_count(key) > *t.truncation.max_edges) {
      reader.fail("entry exceeds max_edges");
    }
    if (!t.entries.emplace(std::move(key), reader.rational(tok[1])).second) {
      reader.fail("matrix listed twice");
    }
  }
  if (tables.empty()) reader.fail("no 'k <k> max_mult <M>' section");
  return tables;
}

std::vector<ParameterTable> read_ptab_file(const std::filesystem::path& path) {
  return open_and_read(path, [](std::istream& in, const std::string& name) { return read_ptab(in, name); });
}

void write_ptab(std::ostream& out, std::span<const ParameterTable> tables,
                std::span<const std::string> header) {
  write_header(out, header);
  for (const ParameterTable& t : tables) {
    out << "k " << t.k << " max_mult " << t.truncation.max_mult;
    if (t.truncation.max_edges) out << " max_edges " << *t.truncation.max_edges;
    out << '\n';
    for (const auto& [a, value] : t.entries) {
      const auto upper = a.upper_triangle();
      for (std::size_t i = 0; i < upper.size(); ++i) out << (i ? "," : "") << upper[i];
      out << ' ' << to_string(value) << '\n';
    }
    if (t.default_value) out << "default " << to_string(*t.default_value) << '\n';
  }
}

std::string output_header(std::string_view fields) {
  return fmt::format("# mgl {} {}", kVersion, fields);
}

std::string truncation_label(const Truncation& t) {
  return t.max_edges ? fmt::format("max_mult:{},max_edges:{}", t.max_mult, *t.max_edges)
                     : fmt::format("max_mult:{}", t.max_mult);
}

}  // namespace mgl
