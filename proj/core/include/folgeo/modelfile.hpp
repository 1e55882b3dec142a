#ifndef FOLGEO_MODELFILE_HPP
#define FOLGEO_MODELFILE_HPP

#include <string>

#include "folgeo/knowledge.hpp"

namespace folgeo {

/// Model document format, line oriented; '#' starts a comment.
///
///   sort s = 3
///   op add : s s -> s
///   0 1 2
///   1 2 0
///   2 0 1
///   rel p : s
///   instance f1
///   p: 1
///
/// Operation tables follow the op line: one row per tuple of leading
/// arguments (row-major), one column per value of the last argument;
/// constants are a single row with a single entry. Instance blocks list
/// one relation tuple per line, comma separated.
Multimodel parse_model_text(const std::string& text);
Multimodel parse_model_file(const std::string& path);

/// Theory document: first line `vars x:s, y:s`, then one formula per line.
Theory parse_theory_text(const std::string& text, const Signature& sig);
Theory parse_theory_file(const std::string& path, const Signature& sig);

/// "x:s,y:s" -> context (names unique, sorted ascending).
VarContext parse_var_list(const std::string& spec);

}  // namespace folgeo

#endif
