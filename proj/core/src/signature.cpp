#include "folgeo/signature.hpp"

#include <set>

namespace folgeo {

std::optional<std::size_t> Signature::sort_index(std::string_view name) const {
  for (std::size_t i = 0; i < sorts.size(); ++i)
    if (sorts[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Signature::op_index(std::string_view name) const {
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (ops[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Signature::rel_index(std::string_view name) const {
  for (std::size_t i = 0; i < rels.size(); ++i)
    if (rels[i].name == name) return i;
  return std::nullopt;
}

std::vector<std::string> validate_signature(const Signature& sig) {
  std::vector<std::string> report;
  std::set<std::string> seen;
  for (const auto& s : sig.sorts) {
    if (!seen.insert(s).second)
      report.push_back("duplicate name: sort " + s);
  }
  auto known_sort = [&](const std::string& s) {
    return sig.sort_index(s).has_value();
  };
  seen.clear();
  for (const auto& op : sig.ops) {
    if (!seen.insert(op.name).second)
      report.push_back("duplicate name: op " + op.name);
    for (const auto& a : op.arg_sorts)
      if (!known_sort(a))
        report.push_back("unknown sort " + a + " in op " + op.name);
    if (!known_sort(op.result_sort))
      report.push_back("unknown sort " + op.result_sort + " in op " + op.name);
  }
  seen.clear();
  for (const auto& rel : sig.rels) {
    if (!seen.insert(rel.name).second)
      report.push_back("duplicate name: rel " + rel.name);
    if (rel.arg_sorts.empty())
      report.push_back("relation " + rel.name + " must have arity >= 1");
    for (const auto& a : rel.arg_sorts)
      if (!known_sort(a))
        report.push_back("unknown sort " + a + " in rel " + rel.name);
  }
  return report;
}

}  // namespace folgeo
