#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mgl/graphon.hpp"
#include "mgl/mobius.hpp"
#include "mgl/multigraph.hpp"

namespace mgl {

// Readers throw ParseError naming "<source>:<line>". Validation failures of
// well-formed content keep their own error code and gain the same prefix.

/// ".mg": "n <count>", then "i j m" lines (1 <= i <= j <= n, m >= 1); i == j
/// gives a loop count. '#' starts a comment.
Multigraph read_mg(std::istream& in, std::string_view source = "<input>");
Multigraph read_mg_file(const std::filesystem::path& path);
void write_mg(std::ostream& out, const Multigraph& g, std::span<const std::string> header = {});

/// ".mgw": "m <m>", "M <cap>", "widths w1 ... wm", "cell a b: p0 ... pM" for
/// every a <= b (a > b lines are optional mirrors), "diag a: d0 d2 ...".
/// Values are integers, fractions p/q or exact decimals.
StepMultigraphon read_mgw(std::istream& in, std::string_view source = "<input>");
StepMultigraphon read_mgw_file(const std::filesystem::path& path);
void write_mgw(std::ostream& out, const StepMultigraphon& w,
               std::span<const std::string> header = {});

/// ".ptab": one or more sections "k <k> max_mult <M> [max_edges <E>]", each
/// followed by "<upper triangle, comma separated> <value>" lines and at most
/// one "default <value>" line. The upper triangle is row-major adjacency
/// (diagonal entries are twice the loop count).
std::vector<ParameterTable> read_ptab(std::istream& in, std::string_view source = "<input>");
std::vector<ParameterTable> read_ptab_file(const std::filesystem::path& path);
void write_ptab(std::ostream& out, std::span<const ParameterTable> tables,
                std::span<const std::string> header = {});

/// "# mgl <version> <fields...>"; every output file starts with it.
std::string output_header(std::string_view fields);

std::string truncation_label(const Truncation& t);

}  // namespace mgl
