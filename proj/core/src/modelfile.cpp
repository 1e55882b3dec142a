#include "folgeo/modelfile.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace folgeo {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg, line);
}

std::string strip(const std::string& raw) {
  std::string s = raw;
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(strip(cur));
  return out;
}

int parse_int(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) fail(line, "bad number '" + s + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (...) {
    fail(line, "bad number '" + s + "'");
  }
}

}  // namespace

Multimodel parse_model_text(const std::string& text) {
  Multimodel mm;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::size_t pending_rows = 0;  // remaining table rows for the last op
  std::size_t row_width = 0;
  std::size_t current_instance = SIZE_MAX;

  auto current_table = [&]() -> std::vector<int>& { return mm.algebra.tables.back(); };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (line.empty()) continue;

    if (pending_rows > 0) {
      auto cells = split_ws(line);
      if (cells.size() != row_width)
        fail(lineno, "expected " + std::to_string(row_width) + " table entries, got " +
                         std::to_string(cells.size()));
      for (const auto& c : cells) current_table().push_back(parse_int(c, lineno));
      --pending_rows;
      continue;
    }

    auto words = split_ws(line);
    const std::string& kw = words[0];

    if (kw == "sort") {
      if (current_instance != SIZE_MAX) fail(lineno, "sort after instance block");
      if (words.size() != 4 || words[2] != "=") fail(lineno, "expected: sort NAME = N");
      int n = parse_int(words[3], lineno);
      if (n < 1) fail(lineno, "carrier size must be >= 1");
      mm.algebra.sig.sorts.push_back(words[1]);
      mm.algebra.carriers.push_back(n);
    } else if (kw == "op") {
      if (current_instance != SIZE_MAX) fail(lineno, "op after instance block");
      // op NAME : S1 S2 ... -> R
      auto colon = std::find(words.begin(), words.end(), ":");
      auto arrow = std::find(words.begin(), words.end(), "->");
      if (words.size() < 5 || colon != words.begin() + 2 || arrow == words.end() ||
          arrow + 2 != words.end())
        fail(lineno, "expected: op NAME : SORTS -> SORT");
      OpDecl op;
      op.name = words[1];
      for (auto it = colon + 1; it != arrow; ++it) op.arg_sorts.push_back(*it);
      op.result_sort = *(arrow + 1);
      std::size_t rows = 1, cols = 1;
      for (std::size_t i = 0; i < op.arg_sorts.size(); ++i) {
        auto si = mm.algebra.sig.sort_index(op.arg_sorts[i]);
        if (!si) fail(lineno, "unknown sort " + op.arg_sorts[i]);
        std::size_t n = static_cast<std::size_t>(mm.algebra.carriers[*si]);
        if (i + 1 == op.arg_sorts.size()) cols = n;
        else rows *= n;
      }
      if (!mm.algebra.sig.sort_index(op.result_sort))
        fail(lineno, "unknown sort " + op.result_sort);
      mm.algebra.sig.ops.push_back(std::move(op));
      mm.algebra.tables.emplace_back();
      pending_rows = rows;
      row_width = cols;
    } else if (kw == "rel") {
      if (current_instance != SIZE_MAX) fail(lineno, "rel after instance block");
      // rel NAME : S1 S2 ...
      if (words.size() < 4 || words[2] != ":") fail(lineno, "expected: rel NAME : SORTS");
      RelDecl rel;
      rel.name = words[1];
      for (std::size_t i = 3; i < words.size(); ++i) {
        if (!mm.algebra.sig.sort_index(words[i])) fail(lineno, "unknown sort " + words[i]);
        rel.arg_sorts.push_back(words[i]);
      }
      mm.algebra.sig.rels.push_back(std::move(rel));
    } else if (kw == "instance") {
      if (words.size() != 2) fail(lineno, "expected: instance NAME");
      if (mm.instance_index(words[1])) fail(lineno, "duplicate instance " + words[1]);
      mm.instances.emplace_back(
          words[1],
          std::vector<std::set<std::vector<int>>>(mm.algebra.sig.rels.size()));
      current_instance = mm.instances.size() - 1;
    } else {
      // relation tuple inside an instance: NAME: e1, e2, ...
      auto colon_pos = line.find(':');
      if (current_instance == SIZE_MAX || colon_pos == std::string::npos)
        fail(lineno, "unexpected line '" + line + "'");
      std::string rel_name = strip(line.substr(0, colon_pos));
      auto ri = mm.algebra.sig.rel_index(rel_name);
      if (!ri) fail(lineno, "unknown relation " + rel_name);
      const RelDecl& rel = mm.algebra.sig.rels[*ri];
      auto cells = split_on(line.substr(colon_pos + 1), ',');
      if (cells.size() != rel.arg_sorts.size())
        fail(lineno, "tuple arity mismatch for relation " + rel_name);
      std::vector<int> tuple;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        int v = parse_int(cells[i], lineno);
        int n = mm.algebra.carrier_of(rel.arg_sorts[i]);
        if (v < 0 || v >= n) fail(lineno, "tuple element out of range");
        tuple.push_back(v);
      }
      mm.instances[current_instance].second[*ri].insert(std::move(tuple));
    }
  }
  if (pending_rows > 0) fail(lineno, "unexpected end of file inside an op table");

  auto report = validate_multimodel(mm);
  if (!report.empty()) fail(lineno, "invalid model document: " + report.front());
  return mm;
}

Multimodel parse_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_text(buf.str());
}

VarContext parse_var_list(const std::string& spec) {
  std::vector<std::pair<std::string, std::string>> vars;
  for (const std::string& item : split_on(spec, ',')) {
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected NAME:SORT in variable list, got '" + item + "'", 0);
    std::string name = strip(item.substr(0, colon));
    std::string sort = strip(item.substr(colon + 1));
    if (name.empty() || sort.empty())
      throw ParseError("expected NAME:SORT in variable list, got '" + item + "'", 0);
    vars.emplace_back(name, sort);
  }
  return VarContext(std::move(vars));
}

Theory parse_theory_text(const std::string& text, const Signature& sig) {
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  bool have_vars = false;
  Theory t;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(raw);
    if (line.empty()) continue;
    if (!have_vars) {
      if (line.rfind("vars", 0) != 0) fail(lineno, "expected a 'vars' line first");
      t.context = parse_var_list(line.substr(4));
      check_context(sig, t.context);
      have_vars = true;
      continue;
    }
    t.formulas.push_back(parse_formula(line, t.context, sig));
  }
  if (!have_vars) fail(lineno, "empty theory document");
  return t;
}

Theory parse_theory_file(const std::string& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_theory_text(buf.str(), sig);
}

}  // namespace folgeo
