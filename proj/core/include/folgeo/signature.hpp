#ifndef FOLGEO_SIGNATURE_HPP
#define FOLGEO_SIGNATURE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace folgeo {

/// An operation symbol with its type: argument sorts and result sort.
/// Zero arguments means a constant.
struct OpDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string result_sort;

  bool operator==(const OpDecl&) const = default;
};

/// A relation symbol with its argument sorts (arity at least 1).
struct RelDecl {
  std::string name;
  std::vector<std::string> arg_sorts;

  bool operator==(const RelDecl&) const = default;
};

/// A multi-sorted signature: sort names, operation symbols, relation
/// symbols. Orderings are significant and fixed at construction.
struct Signature {
  std::vector<std::string> sorts;
  std::vector<OpDecl> ops;
  std::vector<RelDecl> rels;

  std::optional<std::size_t> sort_index(std::string_view name) const;
  std::optional<std::size_t> op_index(std::string_view name) const;
  std::optional<std::size_t> rel_index(std::string_view name) const;

  bool operator==(const Signature&) const = default;
};

/// Returns one message per invariant violation; empty means valid.
std::vector<std::string> validate_signature(const Signature& sig);

}  // namespace folgeo

#endif
