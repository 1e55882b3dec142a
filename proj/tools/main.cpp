// Command-line front end: model documents in, one small report out per
// subcommand. Exit codes: 0 success, 1 negative verdict, 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "folgeo/modelfile.hpp"

using namespace folgeo;

namespace {

Model load_instance(const std::string& path, const std::string& instance) {
  Multimodel mm = parse_model_file(path);
  auto idx = mm.instance_index(instance);
  if (!idx) throw DomainError("no instance named " + instance + " in " + path);
  return instance_model(mm, *idx);
}

std::string context_spec(const VarContext& ctx) {
  std::string out;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ",";
    out += ctx.name(i) + ":" + ctx.sort(i);
  }
  return out;
}

std::string point_line(const PointSpace& sp, std::uint64_t idx) {
  std::vector<int> pt = sp.point_at(idx);
  std::string out = "point:";
  for (std::size_t i = 0; i < pt.size(); ++i)
    out += " " + sp.context().name(i) + "=" + std::to_string(pt[i]);
  return out;
}

std::string index_list(const Bitset& bits) {
  std::string out;
  for (std::uint64_t i : bits.members()) out += " " + std::to_string(i);
  return out;
}

// Parses a term by round-tripping it through a reflexive equality.
Term parse_term_spec(const std::string& text, const VarContext& ctx, const Signature& sig) {
  TypedFormula eq = parse_formula(text + " == " + text, ctx, sig);
  return eq.body->lhs;
}

// "z=add(x,y),w=x" over a source/target context pair.
Substitution parse_subst_spec(const std::string& spec, const VarContext& source,
                              const VarContext& target, const Signature& sig) {
  std::vector<Term> images(source.size());
  std::vector<bool> seen(source.size(), false);
  // split on commas outside parentheses only
  std::vector<std::string> items;
  std::string cur;
  int depth = 0;
  for (char c : spec) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) items.push_back(cur);
  for (const std::string& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("bad mapping entry: " + item);
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    auto vi = source.index_of(name);
    if (!vi) throw DomainError("mapping names unknown variable " + name);
    images[*vi] = parse_term_spec(item.substr(eq + 1), target, sig);
    seen[*vi] = true;
  }
  for (std::size_t i = 0; i < source.size(); ++i)
    if (!seen[i]) throw DomainError("mapping misses variable " + source.name(i));
  Substitution s{source, target, std::move(images)};
  check_substitution(sig, s);
  return s;
}

PointSet parse_index_set(const std::string& spec, const PointSpace& sp) {
  PointSet out = PointSet::empty(sp);
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::uint64_t idx = std::stoull(item);
    if (idx >= sp.size()) throw DomainError("point index out of range: " + item);
    out.bits.set(idx);
  }
  return out;
}

std::string cycle_notation(const std::vector<int>& perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start] || perm[start] == static_cast<int>(start)) continue;
    out += "(";
    std::size_t p = start;
    bool first = true;
    while (!seen[p]) {
      seen[p] = true;
      if (!first) out += " ";
      out += std::to_string(p);
      first = false;
      p = static_cast<std::size_t>(perm[p]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::string map_line(const Signature& sig, const AlgebraMap& m) {
  std::string out;
  for (std::size_t si = 0; si < sig.sorts.size(); ++si) {
    if (si) out += " ";
    out += sig.sorts[si] + ":";
    for (int v : m.per_sort[si]) out += " " + std::to_string(v);
  }
  return out;
}

int cmd_eval(const std::string& path, const std::string& instance,
             const std::string& vars, const std::string& formula) {
  Model m = load_instance(path, instance);
  VarContext ctx = parse_var_list(vars);
  TypedFormula u = parse_formula(formula, ctx, m.algebra.sig);
  PointSet val = eval_formula(m, u);
  std::cout << "indices:" << index_list(val.bits) << "\n";
  for (std::uint64_t i : val.bits.members())
    std::cout << point_line(val.space, i) << "\n";
  return 0;
}

int cmd_closure(const std::string& path, const std::string& instance,
                const std::string& vars, const std::string& set_spec) {
  Model m = load_instance(path, instance);
  PointSpace sp(m.algebra, parse_var_list(vars));
  ClosureResult r = set_closure(m, parse_index_set(set_spec, sp));
  if (!r.warning.empty()) std::cerr << "warning: " << r.warning << "\n";
  std::cout << "closure:" << index_list(r.set.bits) << "\n";
  for (const auto& orbit : r.orbits) {
    std::cout << "orbit:";
    for (std::uint64_t p : orbit) std::cout << " " << p;
    std::cout << "\n";
  }
  return 0;
}

int cmd_aut(const std::string& path, const std::string& instance) {
  Multimodel mm = parse_model_file(path);
  Group g;
  if (instance.empty()) {
    g = aut_group(mm.algebra);
  } else {
    auto idx = mm.instance_index(instance);
    if (!idx) throw DomainError("no instance named " + instance + " in " + path);
    g = aut_model(instance_model(mm, *idx));
  }
  for (const AlgebraMap& d : g.elements) {
    std::string line;
    for (std::size_t si = 0; si < mm.algebra.sig.sorts.size(); ++si) {
      if (si) line += " ";
      line += mm.algebra.sig.sorts[si] + ": " + cycle_notation(d.per_sort[si]);
    }
    std::cout << line << "\n";
  }
  return 0;
}

int cmd_kb_equiv(const std::string& path1, const std::string& path2) {
  KnowledgeBase kb1{parse_model_file(path1)}, kb2{parse_model_file(path2)};
  auto w = kb_equivalent(kb1, kb2);
  if (!w) {
    std::cout << "verdict: NOT-EQUIVALENT\n";
    return 1;
  }
  std::cout << "verdict: EQUIVALENT\n";
  for (const auto& [a, b] : w->alpha) std::cout << "alpha: " << a << " -> " << b << "\n";
  for (const auto& [a, b] : w->alpha)
    std::cout << "delta[" << a << "]: " << map_line(kb1.mm.algebra.sig, w->delta.at(a))
              << "\n";
  return 0;
}

int cmd_member(const std::string& path, const std::string& instance,
               const std::string& theory_path, const std::string& formula) {
  Model m = load_instance(path, instance);
  Theory t = parse_theory_file(theory_path, m.algebra.sig);
  TypedFormula v = parse_formula(formula, t.context, m.algebra.sig);
  bool member = in_closure(m, t, v);
  std::cout << "member: " << (member ? "true" : "false") << "\n";
  return member ? 0 : 1;
}

int cmd_support(const std::string& path, const std::string& instance,
                const std::string& vars, const std::string& formula) {
  Model m = load_instance(path, instance);
  VarContext ctx = parse_var_list(vars);
  TypedFormula u = parse_formula(formula, ctx, m.algebra.sig);
  std::cout << "support:";
  for (const std::string& n : semantic_support(m, u)) std::cout << " " << n;
  std::cout << "\n";
  return 0;
}

int cmd_normalize(const std::string& path, const std::string& vars,
                  const std::string& formula, const std::string& source,
                  const std::string& mapping) {
  Multimodel mm = parse_model_file(path);
  const Signature& sig = mm.algebra.sig;
  VarContext target = parse_var_list(vars);
  TypedFormula u;
  if (source.empty() != mapping.empty())
    throw DomainError("--source and --map must be given together");
  if (!source.empty()) {
    VarContext src = parse_var_list(source);
    Substitution s = parse_subst_spec(mapping, src, target, sig);
    u = apply_subst_formula(sig, s, parse_formula(formula, src, sig));
  } else {
    u = parse_formula(formula, target, sig);
  }
  TypedFormula n = normalize_elementary(sig, u);
  std::cout << "context: " << context_spec(n.context) << "\n";
  std::cout << "formula: " << formula_to_string(n.body) << "\n";
  return 0;
}

int cmd_admissible(const std::string& path, const std::string& instance,
                   const std::string& source, const std::string& target,
                   const std::string& mapping, const std::string& formula_a,
                   const std::string& formula_b) {
  Model m = load_instance(path, instance);
  const Signature& sig = m.algebra.sig;
  VarContext src = parse_var_list(source), tgt = parse_var_list(target);
  Substitution s = parse_subst_spec(mapping, src, tgt, sig);
  PointSet a = eval_formula(m, parse_formula(formula_a, tgt, sig));
  PointSet b = eval_formula(m, parse_formula(formula_b, src, sig));
  bool ok = admissible_sets(m.algebra, s, a, b);
  std::cout << "admissible: " << (ok ? "true" : "false") << "\n";
  return ok ? 0 : 1;
}

int cmd_rf(const std::string& path, const std::string& instance, const std::string& vars) {
  Model m = load_instance(path, instance);
  DefinableFamily fam = rf_family(m, parse_var_list(vars));
  if (!fam.warning.empty()) std::cerr << "warning: " << fam.warning << "\n";
  std::cout << "count: " << fam.sets.size() << "\n";
  for (const PointSet& s : fam.sets) std::cout << "set:" << index_list(s.bits) << "\n";
  return 0;
}

int cmd_geo_equiv(const std::string& path1, const std::string& inst1,
                  const std::string& path2, const std::string& inst2) {
  Model m1 = load_instance(path1, inst1);
  Model m2 = load_instance(path2, inst2);
  GeoEquivReport rep = geometric_equiv_bounded(m1, m2);
  if (!rep.disagreement) {
    std::cout << "verdict: NO-DISAGREEMENT-UP-TO-BOUNDS\n";
    return 1;
  }
  std::cout << "verdict: DISAGREE\n";
  std::cout << "context: " << context_spec(rep.context) << "\n";
  for (const std::string& f : rep.witness_theory) std::cout << "theory: " << f << "\n";
  std::cout << "candidate: " << rep.witness_candidate << "\n";
  std::cout << "in-first: " << (rep.in_first ? "true" : "false") << "\n";
  std::cout << "in-second: " << (rep.in_second ? "true" : "false") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite model geometry toolkit"};
  app.require_subcommand(1);

  std::string path, path2, instance, instance2, vars, formula, set_spec;
  std::string theory_path, source, target, mapping, formula_a, formula_b;

  auto* eval = app.add_subcommand("eval", "value of a formula as a point set");
  eval->add_option("model", path)->required();
  eval->add_option("instance", instance)->required();
  eval->add_option("--vars", vars, "context, e.g. x:s,y:s")->required();
  eval->add_option("--formula", formula)->required();

  auto* closure = app.add_subcommand("closure", "closure of a point set");
  closure->add_option("model", path)->required();
  closure->add_option("instance", instance)->required();
  closure->add_option("--vars", vars)->required();
  closure->add_option("--set", set_spec, "point indices, comma separated")->required();

  auto* aut = app.add_subcommand("aut", "automorphisms of an instance (or the bare algebra)");
  aut->add_option("model", path)->required();
  aut->add_option("instance", instance);

  auto* kbe = app.add_subcommand("kb-equiv", "informational equivalence of two bases");
  kbe->add_option("first", path)->required();
  kbe->add_option("second", path2)->required();

  auto* member = app.add_subcommand("theory-closure-member",
                                    "membership of a formula in a theory's closure");
  member->add_option("model", path)->required();
  member->add_option("instance", instance)->required();
  member->add_option("--theory-file", theory_path)->required();
  member->add_option("--formula", formula)->required();

  auto* support = app.add_subcommand("support", "variables a formula depends on");
  support->add_option("model", path)->required();
  support->add_option("instance", instance)->required();
  support->add_option("--vars", vars)->required();
  support->add_option("--formula", formula)->required();

  auto* normalize = app.add_subcommand("normalize", "substitution-free normal form");
  normalize->add_option("model", path)->required();
  normalize->add_option("--vars", vars, "target context")->required();
  normalize->add_option("--formula", formula)->required();
  normalize->add_option("--source", source, "source context of the substitution");
  normalize->add_option("--map", mapping, "images, e.g. z=add(x,y)");

  auto* adm = app.add_subcommand("admissible", "admissibility of a substitution");
  adm->add_option("model", path)->required();
  adm->add_option("instance", instance)->required();
  adm->add_option("--source", source)->required();
  adm->add_option("--target", target)->required();
  adm->add_option("--map", mapping)->required();
  adm->add_option("--formula-a", formula_a, "set over the target context")->required();
  adm->add_option("--formula-b", formula_b, "set over the source context")->required();

  auto* rf = app.add_subcommand("rf", "family of simple algebraic sets");
  rf->add_option("model", path)->required();
  rf->add_option("instance", instance)->required();
  rf->add_option("--vars", vars)->required();

  auto* geo = app.add_subcommand("geo-equiv", "bounded search for a closure disagreement");
  geo->add_option("first-model", path)->required();
  geo->add_option("first-instance", instance)->required();
  geo->add_option("second-model", path2)->required();
  geo->add_option("second-instance", instance2)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*eval) return cmd_eval(path, instance, vars, formula);
    if (*closure) return cmd_closure(path, instance, vars, set_spec);
    if (*aut) return cmd_aut(path, instance);
    if (*kbe) return cmd_kb_equiv(path, path2);
    if (*member) return cmd_member(path, instance, theory_path, formula);
    if (*support) return cmd_support(path, instance, vars, formula);
    if (*normalize) return cmd_normalize(path, vars, formula, source, mapping);
    if (*adm)
      return cmd_admissible(path, instance, source, target, mapping, formula_a, formula_b);
    if (*rf) return cmd_rf(path, instance, vars);
    if (*geo) return cmd_geo_equiv(path, instance, path2, instance2);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
