#include "oamsort/netlist.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <tuple>

namespace oamsort {

namespace {

struct Token {
  std::string_view text;
  int col = 0;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

struct KeyValue {
  std::string_view key;
  std::string_view value;
  int col = 0;
};

KeyValue split_key_value(const Token& tok, int line_no) {
  auto eq = tok.text.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == tok.text.size())
    throw NetlistParseError(line_no, tok.col,
                            "expected key=value, got '" +
                                std::string(tok.text) + "'");
  return {tok.text.substr(0, eq), tok.text.substr(eq + 1), tok.col};
}

int parse_int(const KeyValue& kv, int line_no) {
  int value = 0;
  const char* first = kv.value.data();
  const char* last = first + kv.value.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw NetlistParseError(line_no, kv.col,
                            "invalid integer for '" + std::string(kv.key) +
                                "': '" + std::string(kv.value) + "'");
  return value;
}

double parse_real(const KeyValue& kv, int line_no) {
  double value = 0.0;
  const char* first = kv.value.data();
  const char* last = first + kv.value.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw NetlistParseError(line_no, kv.col,
                            "invalid number for '" + std::string(kv.key) +
                                "': '" + std::string(kv.value) + "'");
  return value;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

Netlist parse_netlist(std::string_view text) {
  Netlist nl;
  bool have_tree = false;
  int tree_line = 0;
  int line_no = 0;
  std::size_t pos = 0;

  while (pos < text.size()) {
    auto nl_pos = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl_pos == std::string_view::npos ? text.size() - pos : nl_pos - pos);
    pos = nl_pos == std::string_view::npos ? text.size() : nl_pos + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;

    const Token& head = tokens.front();
    if (head.text == "tree") {
      if (have_tree)
        throw NetlistParseError(line_no, head.col,
                                "duplicate tree declaration (first on line " +
                                    std::to_string(tree_line) + ")");
      have_tree = true;
      tree_line = line_no;
      bool have_depth = false;
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        KeyValue kv = split_key_value(tokens[t], line_no);
        if (kv.key == "depth") {
          if (have_depth)
            throw NetlistParseError(line_no, kv.col, "duplicate key 'depth'");
          nl.depth = parse_int(kv, line_no);
          have_depth = true;
        } else if (kv.key == "frft_depth") {
          if (nl.frft_depth)
            throw NetlistParseError(line_no, kv.col,
                                    "duplicate key 'frft_depth'");
          nl.frft_depth = parse_int(kv, line_no);
        } else {
          throw NetlistParseError(line_no, kv.col,
                                  "unknown key '" + std::string(kv.key) +
                                      "' in tree declaration");
        }
      }
      if (!have_depth)
        throw NetlistParseError(line_no, head.col,
                                "tree declaration requires depth=<D>");
      if (nl.depth < 1 || nl.depth > kMaxTreeDepth)
        throw NetlistParseError(line_no, head.col,
                                "depth must be in [1, " +
                                    std::to_string(kMaxTreeDepth) + "], got " +
                                    std::to_string(nl.depth));
      if (nl.frft_depth && (*nl.frft_depth < 1 || *nl.frft_depth > kMaxTreeDepth))
        throw NetlistParseError(line_no, head.col,
                                "frft_depth must be in [1, " +
                                    std::to_string(kMaxTreeDepth) + "], got " +
                                    std::to_string(*nl.frft_depth));
    } else if (head.text == "stage") {
      StageOverride ov;
      ov.line = line_no;
      bool have_kind = false, have_n = false, have_k = false;
      bool have_rot = false, have_phase = false;
      int n_col = head.col;
      for (std::size_t t = 1; t < tokens.size(); ++t) {
        KeyValue kv = split_key_value(tokens[t], line_no);
        if (kv.key == "kind") {
          if (have_kind)
            throw NetlistParseError(line_no, kv.col, "duplicate key 'kind'");
          if (kv.value == "oam")
            ov.kind = StageKind::oam;
          else if (kv.value == "frft")
            ov.kind = StageKind::frft;
          else
            throw NetlistParseError(line_no, kv.col,
                                    "kind must be oam or frft, got '" +
                                        std::string(kv.value) + "'");
          have_kind = true;
        } else if (kv.key == "n") {
          if (have_n)
            throw NetlistParseError(line_no, kv.col, "duplicate key 'n'");
          ov.n = parse_int(kv, line_no);
          have_n = true;
          n_col = kv.col;
        } else if (kv.key == "k") {
          if (have_k)
            throw NetlistParseError(line_no, kv.col, "duplicate key 'k'");
          ov.k = parse_int(kv, line_no);
          have_k = true;
        } else if (kv.key == "rot_err") {
          if (have_rot)
            throw NetlistParseError(line_no, kv.col, "duplicate key 'rot_err'");
          ov.rot_err = parse_real(kv, line_no);
          have_rot = true;
        } else if (kv.key == "phase_err") {
          if (have_phase)
            throw NetlistParseError(line_no, kv.col,
                                    "duplicate key 'phase_err'");
          ov.phase_err = parse_real(kv, line_no);
          have_phase = true;
        } else {
          throw NetlistParseError(line_no, kv.col,
                                  "unknown key '" + std::string(kv.key) +
                                      "' in stage declaration");
        }
      }
      if (!have_kind || !have_n || !have_k)
        throw NetlistParseError(line_no, head.col,
                                "stage declaration requires kind=, n= and k=");
      if (ov.n < 0 || ov.n >= kMaxTreeDepth)
        throw NetlistParseError(line_no, n_col,
                                "stage level n must be in [0, " +
                                    std::to_string(kMaxTreeDepth - 1) +
                                    "], got " + std::to_string(ov.n));
      if (ov.k < 0 || ov.k >= (1 << ov.n))
        throw NetlistParseError(line_no, head.col,
                                "k out of range for n: need 0 <= k < 2^n, got n=" +
                                    std::to_string(ov.n) + " k=" +
                                    std::to_string(ov.k));
      nl.overrides.push_back(ov);
    } else {
      throw NetlistParseError(line_no, head.col,
                              "unknown directive '" + std::string(head.text) +
                                  "' (expected tree or stage)");
    }
  }

  if (!have_tree)
    throw NetlistParseError(line_no + 1, 1, "missing tree declaration");

  std::set<std::tuple<StageKind, int, int>> seen;
  for (const StageOverride& ov : nl.overrides) {
    if (!seen.insert({ov.kind, ov.n, ov.k}).second)
      throw NetlistParseError(ov.line, 1,
                              "duplicate stage kind=" +
                                  std::string(ov.kind == StageKind::oam
                                                  ? "oam"
                                                  : "frft") +
                                  " n=" + std::to_string(ov.n) + " k=" +
                                  std::to_string(ov.k));
    if (ov.kind == StageKind::oam && ov.n >= nl.depth)
      throw NetlistParseError(ov.line, 1,
                              "oam stage level n=" + std::to_string(ov.n) +
                                  " outside tree depth " +
                                  std::to_string(nl.depth));
    if (ov.kind == StageKind::frft) {
      if (!nl.frft_depth)
        throw NetlistParseError(ov.line, 1,
                                "frft stage declared but tree has no frft_depth");
      if (ov.n >= *nl.frft_depth)
        throw NetlistParseError(ov.line, 1,
                                "frft stage level n=" + std::to_string(ov.n) +
                                    " outside frft_depth " +
                                    std::to_string(*nl.frft_depth));
    }
  }
  return nl;
}

std::string format_netlist(const Netlist& nl) {
  std::string out = "tree depth=" + std::to_string(nl.depth);
  if (nl.frft_depth) out += " frft_depth=" + std::to_string(*nl.frft_depth);
  out += "\n";

  std::vector<StageOverride> active;
  for (const StageOverride& ov : nl.overrides)
    if (ov.rot_err != 0.0 || ov.phase_err != 0.0) active.push_back(ov);
  std::sort(active.begin(), active.end(),
            [](const StageOverride& a, const StageOverride& b) {
              return std::tuple{a.kind, a.n, a.k} < std::tuple{b.kind, b.n, b.k};
            });
  for (const StageOverride& ov : active) {
    out += "stage kind=";
    out += ov.kind == StageKind::oam ? "oam" : "frft";
    out += " n=" + std::to_string(ov.n) + " k=" + std::to_string(ov.k);
    if (ov.rot_err != 0.0) out += " rot_err=" + shortest(ov.rot_err);
    if (ov.phase_err != 0.0) out += " phase_err=" + shortest(ov.phase_err);
    out += "\n";
  }
  return out;
}

ExtendedSorter sorter_from_netlist(const Netlist& nl) {
  ExtendedSorter sorter;
  if (nl.frft_depth)
    sorter = append_frft_sorter(build_tree(nl.depth), *nl.frft_depth);
  else
    sorter.oam_tree = build_tree(nl.depth);
  for (const StageOverride& ov : nl.overrides) {
    StageSpec& s = ov.kind == StageKind::oam
                       ? sorter.oam_tree.stage(ov.n, ov.k)
                       : sorter.frft_stage(ov.n, ov.k);
    if (ov.kind == StageKind::oam)
      s.rotator.error = ov.rot_err;
    else
      s.frft.error = ov.rot_err;
    s.shifter.error = ov.phase_err;
  }
  return sorter;
}

}  // namespace oamsort
